//! Polynomial arithmetic over Z_p and the irreducible-modulus search
//! backing GF(p^k) construction.
//!
//! Polynomials are coefficient vectors, ascending degree. The field
//! modulus is the lexicographically smallest monic irreducible of degree
//! k, comparing coefficient tuples (a_0, ..., a_{k-1}) degree-ascending.

/// Multiplies two coefficient vectors over Z_p.
pub fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of a modulo the monic divisor d over Z_p.
pub fn poly_rem(a: &[u64], d: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*d.last().unwrap(), 1, "divisor must be monic");
    let mut r: Vec<u64> = a.to_vec();
    let dd = d.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let shift = r.len() - 1 - dd;
            for (t, &dc) in d.iter().enumerate() {
                let idx = shift + t;
                r[idx] = (r[idx] + p - (lead * dc) % p) % p;
            }
        }
        r.pop();
        r = trim(r);
        if r.len() <= dd {
            break;
        }
    }
    r
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// A monic polynomial of degree >= 1 is irreducible over Z_p exactly when
/// no monic polynomial of degree 1..=deg/2 divides it; checked by trial
/// division, which is adequate at the orders this crate constructs.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let mut tail = vec![0u64; d];
        loop {
            let mut divisor = tail.clone();
            divisor.push(1);
            if poly_rem(f, &divisor, p).is_empty() {
                return false;
            }
            if !increment(&mut tail, p) {
                break;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree k over Z_p,
/// comparing the non-leading coefficients (a_0, ..., a_{k-1}) with a_0
/// most significant.
pub fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let total = (p as u128).pow(k as u32);
    let mut t: u128 = 0;
    while t < total {
        // t counts with a_0 as the most significant digit, so ascending t
        // enumerates coefficient tuples in lexicographic order.
        let mut coeffs = vec![0u64; k + 1];
        let mut rest = t;
        for i in 0..k {
            let weight = (p as u128).pow((k - 1 - i) as u32);
            coeffs[i] = (rest / weight) as u64;
            rest %= weight;
        }
        coeffs[k] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
        t += 1;
    }
    unreachable!("an irreducible of every degree exists over every prime field")
}

fn increment(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_modulus_is_x2_x_1() {
        // Scan of monic quadratics over Z_2: x^2, x^2+x, x^2+1 all factor.
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
    }

    #[test]
    fn gf9_modulus_is_x2_1() {
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn gf8_modulus_is_irreducible_cubic() {
        // (1,0,1) precedes (1,1,0) lexicographically and x^3+x^2+1 has no
        // roots over Z_2, so it is the chosen modulus.
        let f = smallest_irreducible(2, 3);
        assert_eq!(f, vec![1, 0, 1, 1]);
        assert!(is_irreducible(&f, 2));
    }

    #[test]
    fn reducibles_are_rejected() {
        assert!(!is_irreducible(&[1, 0, 1], 2)); // x^2+1 = (x+1)^2 over Z_2
        assert!(!is_irreducible(&[0, 0, 1], 2)); // x^2
        assert!(is_irreducible(&[1, 1, 1], 2));
    }

    #[test]
    fn rem_and_mul_agree() {
        // (x+1)(x+2) = x^2 + 3x + 2 == x^2 + 2 over Z_3, and mod x^2+1 it
        // reduces to 1.
        let prod = poly_mul(&[1, 1], &[2, 1], 3);
        assert_eq!(prod, vec![2, 0, 1]);
        assert_eq!(poly_rem(&prod, &[1, 0, 1], 3), vec![1]);
    }
}
