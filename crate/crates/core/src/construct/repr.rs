//! Structural arithmetic for each construction node.
//!
//! Composite representations encode elements positionally with the first
//! coordinate least significant: matrix entries row-major, product
//! factors left-to-right, polynomial coefficients degree-ascending,
//! trivial-extension pairs (r, m), quaternion coefficients on 1, i, j, k,
//! Morita tuples (a, m, p, b).

use crate::construct::gf::poly_rem;
use crate::ring::{FiniteRing, RingOps};

#[inline]
fn decode(mut i: usize, radix: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(i % radix);
        i /= radix;
    }
    out
}

#[inline]
fn encode(digits: &[usize], radix: usize) -> usize {
    let mut i = 0;
    for &d in digits.iter().rev() {
        i = i * radix + d;
    }
    i
}

#[inline]
fn badd(base: &FiniteRing, a: usize, b: usize) -> usize {
    use crate::ring::ElementId;
    base.add(ElementId(a as u32), ElementId(b as u32)).index()
}

#[inline]
fn bneg(base: &FiniteRing, a: usize) -> usize {
    use crate::ring::ElementId;
    base.neg(ElementId(a as u32)).index()
}

#[inline]
fn bsub(base: &FiniteRing, a: usize, b: usize) -> usize {
    use crate::ring::ElementId;
    base.sub(ElementId(a as u32), ElementId(b as u32)).index()
}

#[inline]
fn bmul(base: &FiniteRing, a: usize, b: usize) -> usize {
    use crate::ring::ElementId;
    base.mul(ElementId(a as u32), ElementId(b as u32)).index()
}

fn bfmt(base: &FiniteRing, a: usize) -> String {
    use crate::ring::ElementId;
    base.format(ElementId(a as u32))
}

pub struct ZnOps {
    pub n: usize,
}

impl RingOps for ZnOps {
    fn order(&self) -> usize {
        self.n
    }
    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        1 % self.n
    }
    fn add(&self, a: usize, b: usize) -> usize {
        (a + b) % self.n
    }
    fn neg(&self, a: usize) -> usize {
        (self.n - a) % self.n
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        a * b % self.n
    }
    fn format(&self, a: usize) -> String {
        a.to_string()
    }
    fn radices(&self) -> Option<Vec<usize>> {
        Some(vec![self.n])
    }
}

/// GF(p^k) as Z_p[x] modulo a monic irreducible of degree k; element index
/// digits base p are the coefficients, degree-ascending.
pub struct GfOps {
    pub p: usize,
    pub k: usize,
    pub modulus: Vec<u64>,
}

impl GfOps {
    fn digits(&self, i: usize) -> Vec<usize> {
        decode(i, self.p, self.k)
    }
}

impl RingOps for GfOps {
    fn order(&self) -> usize {
        self.p.pow(self.k as u32)
    }
    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        1
    }
    fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<usize> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        encode(&sum, self.p)
    }
    fn neg(&self, a: usize) -> usize {
        let digits: Vec<usize> = self
            .digits(a)
            .into_iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        encode(&digits, self.p)
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let da: Vec<u64> = self.digits(a).into_iter().map(|d| d as u64).collect();
        let db: Vec<u64> = self.digits(b).into_iter().map(|d| d as u64).collect();
        let prod = crate::construct::gf::poly_mul(&da, &db, self.p as u64);
        let rem = poly_rem(&prod, &self.modulus, self.p as u64);
        let mut digits = vec![0usize; self.k];
        for (i, c) in rem.iter().enumerate() {
            digits[i] = *c as usize;
        }
        encode(&digits, self.p)
    }
    fn format(&self, a: usize) -> String {
        if self.k == 1 {
            return a.to_string();
        }
        let digits = self.digits(a);
        let inner: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
        format!("[{}]", inner.join(","))
    }
    fn radices(&self) -> Option<Vec<usize>> {
        Some(vec![self.p; self.k])
    }
}

pub struct MatrixOps {
    pub n: usize,
    pub base: FiniteRing,
}

impl RingOps for MatrixOps {
    fn order(&self) -> usize {
        self.base.order().pow((self.n * self.n) as u32)
    }
    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        let m = self.base.order();
        let one = self.base.one().index();
        let digits: Vec<usize> = (0..self.n * self.n)
            .map(|pos| if pos / self.n == pos % self.n { one } else { 0 })
            .collect();
        encode(&digits, m)
    }
    fn add(&self, a: usize, b: usize) -> usize {
        let m = self.base.order();
        let k = self.n * self.n;
        let (da, db) = (decode(a, m, k), decode(b, m, k));
        let sum: Vec<usize> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| badd(&self.base, *x, *y))
            .collect();
        encode(&sum, m)
    }
    fn neg(&self, a: usize) -> usize {
        let m = self.base.order();
        let digits: Vec<usize> = decode(a, m, self.n * self.n)
            .into_iter()
            .map(|x| bneg(&self.base, x))
            .collect();
        encode(&digits, m)
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.base.order();
        let n = self.n;
        let (da, db) = (decode(a, m, n * n), decode(b, m, n * n));
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut s = 0usize;
                for t in 0..n {
                    s = badd(&self.base, s, bmul(&self.base, da[i * n + t], db[t * n + j]));
                }
                out.push(s);
            }
        }
        encode(&out, m)
    }
    fn format(&self, a: usize) -> String {
        let m = self.base.order();
        let digits = decode(a, m, self.n * self.n);
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let entries: Vec<String> = (0..self.n)
                    .map(|j| bfmt(&self.base, digits[i * self.n + j]))
                    .collect();
                format!("[{}]", entries.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
    fn radices(&self) -> Option<Vec<usize>> {
        Some(vec![self.base.order(); self.n * self.n])
    }
}

/// Upper triangular matrices; stored slots are the positions (i, j) with
/// i <= j in row-major order.
pub struct UpperTriangularOps {
    pub n: usize,
    pub base: FiniteRing,
    pub slots: Vec<(usize, usize)>,
}

impl UpperTriangularOps {
    pub fn new(n: usize, base: FiniteRing) -> Self {
        let slots = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .collect();
        UpperTriangularOps { n, base, slots }
    }

    fn pos(&self, i: usize, j: usize) -> usize {
        // Row i starts after n + (n-1) + ... + (n-i+1) earlier slots.
        i * self.n - i * (i + 1) / 2 + i + (j - i)
    }
}

impl RingOps for UpperTriangularOps {
    fn order(&self) -> usize {
        self.base.order().pow(self.slots.len() as u32)
    }
    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        let m = self.base.order();
        let one = self.base.one().index();
        let digits: Vec<usize> = self
            .slots
            .iter()
            .map(|&(i, j)| if i == j { one } else { 0 })
            .collect();
        encode(&digits, m)
    }
    fn add(&self, a: usize, b: usize) -> usize {
        let m = self.base.order();
        let k = self.slots.len();
        let (da, db) = (decode(a, m, k), decode(b, m, k));
        let sum: Vec<usize> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| badd(&self.base, *x, *y))
            .collect();
        encode(&sum, m)
    }
    fn neg(&self, a: usize) -> usize {
        let m = self.base.order();
        let digits: Vec<usize> = decode(a, m, self.slots.len())
            .into_iter()
            .map(|x| bneg(&self.base, x))
            .collect();
        encode(&digits, m)
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.base.order();
        let k = self.slots.len();
        let (da, db) = (decode(a, m, k), decode(b, m, k));
        let mut out = Vec::with_capacity(k);
        for &(i, j) in &self.slots {
            let mut s = 0usize;
            for t in i..=j {
                s = badd(
                    &self.base,
                    s,
                    bmul(&self.base, da[self.pos(i, t)], db[self.pos(t, j)]),
                );
            }
            out.push(s);
        }
        encode(&out, m)
    }
    fn format(&self, a: usize) -> String {
        let m = self.base.order();
        let digits = decode(a, m, self.slots.len());
        let zero = bfmt(&self.base, self.base.zero().index());
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let entries: Vec<String> = (0..self.n)
                    .map(|j| {
                        if i <= j {
                            bfmt(&self.base, digits[self.pos(i, j)])
                        } else {
                            zero.clone()
                        }
                    })
                    .collect();
                format!("[{}]", entries.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
    fn radices(&self) -> Option<Vec<usize>> {
        Some(vec![self.base.order(); self.slots.len()])
    }
}

pub struct ProductOps {
    pub parts: Vec<FiniteRing>,
}

impl ProductOps {
    fn split(&self, mut i: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parts.len());
        for p in &self.parts {
            out.push(i % p.order());
            i /= p.order();
        }
        out
    }

    fn join(&self, digits: &[usize]) -> usize {
        let mut i = 0;
        for (d, p) in digits.iter().zip(&self.parts).rev() {
            i = i * p.order() + d;
        }
        i
    }
}

impl RingOps for ProductOps {
    fn order(&self) -> usize {
        self.parts.iter().map(|p| p.order()).product()
    }
    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        let ones: Vec<usize> = self.parts.iter().map(|p| p.one().index()).collect();
        self.join(&ones)
    }
    fn add(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.split(a), self.split(b));
        let sum: Vec<usize> = self
            .parts
            .iter()
            .zip(da.iter().zip(&db))
            .map(|(p, (x, y))| badd(p, *x, *y))
            .collect();
        self.join(&sum)
    }
    fn neg(&self, a: usize) -> usize {
        let digits: Vec<usize> = self
            .parts
            .iter()
            .zip(self.split(a))
            .map(|(p, x)| bneg(p, x))
            .collect();
        self.join(&digits)
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.split(a), self.split(b));
        let prod: Vec<usize> = self
            .parts
            .iter()
            .zip(da.iter().zip(&db))
            .map(|(p, (x, y))| bmul(p, *x, *y))
            .collect();
        self.join(&prod)
    }
    fn format(&self, a: usize) -> String {
        let parts: Vec<String> = self
            .parts
            .iter()
            .zip(self.split(a))
            .map(|(p, x)| bfmt(p, x))
            .collect();
        format!("({})", parts.join(", "))
    }
    fn radices(&self) -> Option<Vec<usize>> {
        Some(self.parts.iter().map(|p| p.order()).collect())
    }
}

/// Trivial extension of R by the regular bimodule: pairs (r, m) with
/// (r, m)(r', m') = (rr', rm' + mr'). Every (0, m) squares to zero.
pub struct TrivialExtensionOps {
    pub base: FiniteRing,
}

impl RingOps for TrivialExtensionOps {
    fn order(&self) -> usize {
        self.base.order() * self.base.order()
    }
    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        self.base.one().index()
    }
    fn add(&self, a: usize, b: usize) -> usize {
        let m = self.base.order();
        let (r1, m1) = (a % m, a / m);
        let (r2, m2) = (b % m, b / m);
        badd(&self.base, r1, r2) + m * badd(&self.base, m1, m2)
    }
    fn neg(&self, a: usize) -> usize {
        let m = self.base.order();
        bneg(&self.base, a % m) + m * bneg(&self.base, a / m)
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.base.order();
        let (r1, m1) = (a % m, a / m);
        let (r2, m2) = (b % m, b / m);
        let r = bmul(&self.base, r1, r2);
        let mm = badd(
            &self.base,
            bmul(&self.base, r1, m2),
            bmul(&self.base, m1, r2),
        );
        r + m * mm
    }
    fn format(&self, a: usize) -> String {
        let m = self.base.order();
        format!("({}, {})", bfmt(&self.base, a % m), bfmt(&self.base, a / m))
    }
    fn radices(&self) -> Option<Vec<usize>> {
        Some(vec![self.base.order(); 2])
    }
}

/// R[x] mod x^n on coefficient tuples, degree-ascending.
pub struct PolyQuotOps {
    pub base: FiniteRing,
    pub n: usize,
}

impl RingOps for PolyQuotOps {
    fn order(&self) -> usize {
        self.base.order().pow(self.n as u32)
    }
    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        self.base.one().index()
    }
    fn add(&self, a: usize, b: usize) -> usize {
        let m = self.base.order();
        let (da, db) = (decode(a, m, self.n), decode(b, m, self.n));
        let sum: Vec<usize> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| badd(&self.base, *x, *y))
            .collect();
        encode(&sum, m)
    }
    fn neg(&self, a: usize) -> usize {
        let m = self.base.order();
        let digits: Vec<usize> = decode(a, m, self.n)
            .into_iter()
            .map(|x| bneg(&self.base, x))
            .collect();
        encode(&digits, m)
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.base.order();
        let (da, db) = (decode(a, m, self.n), decode(b, m, self.n));
        let mut out = vec![0usize; self.n];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                if i + j < self.n {
                    out[i + j] = badd(&self.base, out[i + j], bmul(&self.base, x, y));
                }
            }
        }
        encode(&out, m)
    }
    fn format(&self, a: usize) -> String {
        let m = self.base.order();
        let digits = decode(a, m, self.n);
        let inner: Vec<String> = digits.iter().map(|d| bfmt(&self.base, *d)).collect();
        format!("[{}]", inner.join(","))
    }
    fn radices(&self) -> Option<Vec<usize>> {
        Some(vec![self.base.order(); self.n])
    }
}

/// Quaternions over the base ring on coefficient 4-tuples (1, i, j, k),
/// with i^2 = j^2 = k^2 = -1, ij = k = -ji, and the derived relations
/// jk = i = -kj, ki = j = -ik.
pub struct QuaternionOps {
    pub base: FiniteRing,
}

impl RingOps for QuaternionOps {
    fn order(&self) -> usize {
        self.base.order().pow(4)
    }
    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        self.base.one().index()
    }
    fn add(&self, a: usize, b: usize) -> usize {
        let m = self.base.order();
        let (da, db) = (decode(a, m, 4), decode(b, m, 4));
        let sum: Vec<usize> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| badd(&self.base, *x, *y))
            .collect();
        encode(&sum, m)
    }
    fn neg(&self, a: usize) -> usize {
        let m = self.base.order();
        let digits: Vec<usize> = decode(a, m, 4)
            .into_iter()
            .map(|x| bneg(&self.base, x))
            .collect();
        encode(&digits, m)
    }
    fn mul(&self, x: usize, y: usize) -> usize {
        let base = &self.base;
        let m = base.order();
        let d1 = decode(x, m, 4);
        let d2 = decode(y, m, 4);
        let (a1, b1, c1, e1) = (d1[0], d1[1], d1[2], d1[3]);
        let (a2, b2, c2, e2) = (d2[0], d2[1], d2[2], d2[3]);
        let ra = bsub(
            base,
            bsub(
                base,
                bsub(base, bmul(base, a1, a2), bmul(base, b1, b2)),
                bmul(base, c1, c2),
            ),
            bmul(base, e1, e2),
        );
        let rb = bsub(
            base,
            badd(
                base,
                badd(base, bmul(base, a1, b2), bmul(base, b1, a2)),
                bmul(base, c1, e2),
            ),
            bmul(base, e1, c2),
        );
        let rc = badd(
            base,
            bsub(base, bmul(base, a1, c2), bmul(base, b1, e2)),
            badd(base, bmul(base, c1, a2), bmul(base, e1, b2)),
        );
        let rd = bsub(
            base,
            badd(
                base,
                badd(base, bmul(base, a1, e2), bmul(base, b1, c2)),
                bmul(base, e1, a2),
            ),
            bmul(base, c1, b2),
        );
        encode(&[ra, rb, rc, rd], m)
    }
    fn format(&self, a: usize) -> String {
        let m = self.base.order();
        let d = decode(a, m, 4);
        format!(
            "{}+{}i+{}j+{}k",
            bfmt(&self.base, d[0]),
            bfmt(&self.base, d[1]),
            bfmt(&self.base, d[2]),
            bfmt(&self.base, d[3])
        )
    }
    fn radices(&self) -> Option<Vec<usize>> {
        Some(vec![self.base.order(); 4])
    }
}

/// Trivial Morita context with all four slots tied to one ring W: tuples
/// (a, m, p, b) with matrix-style addition and zero context products,
/// (a,m,p,b)(a',m',p',b') = (aa', am'+mb', pa'+bp', bb').
pub struct MoritaOps {
    pub carrier: FiniteRing,
}

impl RingOps for MoritaOps {
    fn order(&self) -> usize {
        self.carrier.order().pow(4)
    }
    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        let m = self.carrier.order();
        let one = self.carrier.one().index();
        encode(&[one, 0, 0, one], m)
    }
    fn add(&self, a: usize, b: usize) -> usize {
        let m = self.carrier.order();
        let (da, db) = (decode(a, m, 4), decode(b, m, 4));
        let sum: Vec<usize> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| badd(&self.carrier, *x, *y))
            .collect();
        encode(&sum, m)
    }
    fn neg(&self, a: usize) -> usize {
        let m = self.carrier.order();
        let digits: Vec<usize> = decode(a, m, 4)
            .into_iter()
            .map(|x| bneg(&self.carrier, x))
            .collect();
        encode(&digits, m)
    }
    fn mul(&self, x: usize, y: usize) -> usize {
        let w = &self.carrier;
        let m = w.order();
        let d1 = decode(x, m, 4);
        let d2 = decode(y, m, 4);
        let (a1, m1, p1, b1) = (d1[0], d1[1], d1[2], d1[3]);
        let (a2, m2, p2, b2) = (d2[0], d2[1], d2[2], d2[3]);
        let ra = bmul(w, a1, a2);
        let rm = badd(w, bmul(w, a1, m2), bmul(w, m1, b2));
        let rp = badd(w, bmul(w, p1, a2), bmul(w, b1, p2));
        let rb = bmul(w, b1, b2);
        encode(&[ra, rm, rp, rb], m)
    }
    fn format(&self, a: usize) -> String {
        let m = self.carrier.order();
        let d = decode(a, m, 4);
        let parts: Vec<String> = d.iter().map(|x| bfmt(&self.carrier, *x)).collect();
        format!("({})", parts.join(", "))
    }
    fn radices(&self) -> Option<Vec<usize>> {
        Some(vec![self.carrier.order(); 4])
    }
}

/// Corner ring Re for a central idempotent e: the members are the parent
/// products xe in ascending parent order, the unity is e, operations are
/// inherited from the parent.
pub struct CornerOps {
    pub parent: FiniteRing,
    pub members: Vec<u32>,
    pub index_of: Vec<u32>,
    pub unity: usize,
}

impl CornerOps {
    fn lift(&self, i: usize) -> usize {
        self.members[i] as usize
    }

    fn drop(&self, parent_idx: usize) -> usize {
        self.index_of[parent_idx] as usize
    }
}

impl RingOps for CornerOps {
    fn order(&self) -> usize {
        self.members.len()
    }
    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        self.unity
    }
    fn add(&self, a: usize, b: usize) -> usize {
        use crate::ring::ElementId;
        self.drop(
            self.parent
                .add(
                    ElementId(self.lift(a) as u32),
                    ElementId(self.lift(b) as u32),
                )
                .index(),
        )
    }
    fn neg(&self, a: usize) -> usize {
        use crate::ring::ElementId;
        self.drop(self.parent.neg(ElementId(self.lift(a) as u32)).index())
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        use crate::ring::ElementId;
        self.drop(
            self.parent
                .mul(
                    ElementId(self.lift(a) as u32),
                    ElementId(self.lift(b) as u32),
                )
                .index(),
        )
    }
    fn format(&self, a: usize) -> String {
        bfmt(&self.parent, self.lift(a))
    }
}

/// Quotient of a parent ring by a closed ideal, on the least-index coset
/// representatives in ascending order.
pub struct QuotientOps {
    pub parent: FiniteRing,
    pub reps: Vec<u32>,
    pub quot_of_parent: Vec<u32>,
}

impl RingOps for QuotientOps {
    fn order(&self) -> usize {
        self.reps.len()
    }
    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        self.quot_of_parent[self.parent.one().index()] as usize
    }
    fn add(&self, a: usize, b: usize) -> usize {
        use crate::ring::ElementId;
        let s = self
            .parent
            .add(ElementId(self.reps[a]), ElementId(self.reps[b]));
        self.quot_of_parent[s.index()] as usize
    }
    fn neg(&self, a: usize) -> usize {
        use crate::ring::ElementId;
        let s = self.parent.neg(ElementId(self.reps[a]));
        self.quot_of_parent[s.index()] as usize
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        use crate::ring::ElementId;
        let s = self
            .parent
            .mul(ElementId(self.reps[a]), ElementId(self.reps[b]));
        self.quot_of_parent[s.index()] as usize
    }
    fn format(&self, a: usize) -> String {
        bfmt(&self.parent, self.reps[a] as usize)
    }
}
