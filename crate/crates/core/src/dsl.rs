//! Surface syntax for ring expressions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr := term { "x" term }                  left-associative direct product
//! term := "Z(" nat ")" | "GF(" nat ")"
//!       | "M(" nat "," expr ")" | "T(" nat "," expr ")"
//!       | "H(" expr ")" | "TrivExt(" expr ")"
//!       | "PolyQuot(" expr "," nat ")" | "Morita(" expr ")"
//!       | "(" expr ")"
//! ```
//!
//! A chain of "x" flattens into one product node; explicitly parenthesized
//! products stay nested. `RingExpr`'s `Display` is the inverse: formatting
//! any parsed tree parses back to an identical tree.

use crate::expr::{ExprError, RingExpr};
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("number at byte {offset} is too large")]
    NumberTooLarge { offset: usize },
    #[error("semantic error: {0}")]
    Semantic(#[from] ExprError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Name(String),
    Number(u64),
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Name(s) => write!(f, "{s:?}"),
            Token::Number(n) => write!(f, "number {n}"),
            Token::LParen => f.write_str("\"(\""),
            Token::RParen => f.write_str("\")\""),
            Token::Comma => f.write_str("\",\""),
            Token::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            ',' => {
                tokens.push((i, Token::Comma));
                i += 1;
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() {
                    i += 1;
                }
                tokens.push((start, Token::Name(text[start..i].to_string())));
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let n: u64 = text[start..i]
                    .parse()
                    .map_err(|_| ParseError::NumberTooLarge { offset: start })?;
                tokens.push((start, Token::Number(n)));
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset: i,
                    expected: vec!["a constructor name", "\"(\"", "a number"],
                    found: format!("{c:?}"),
                })
            }
        }
    }
    tokens.push((bytes.len(), Token::End));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &(usize, Token) {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> (usize, Token) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: Vec<&'static str>) -> Result<T, ParseError> {
        let (offset, tok) = self.peek();
        Err(ParseError::Syntax {
            offset: *offset,
            expected,
            found: tok.to_string(),
        })
    }

    fn expect(&mut self, want: Token, label: &'static str) -> Result<(), ParseError> {
        if self.peek().1 == want {
            self.advance();
            Ok(())
        } else {
            self.fail(vec![label])
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        match self.peek().1.clone() {
            Token::Number(n) => {
                self.advance();
                Ok(n)
            }
            _ => self.fail(vec!["a number"]),
        }
    }

    fn arity(&mut self) -> Result<u32, ParseError> {
        let (offset, _) = *self.peek();
        let n = self.number()?;
        u32::try_from(n).map_err(|_| ParseError::NumberTooLarge { offset })
    }

    fn expr(&mut self) -> Result<RingExpr, ParseError> {
        let mut parts = vec![self.term()?];
        while matches!(&self.peek().1, Token::Name(n) if n == "x") {
            self.advance();
            parts.push(self.term()?);
        }
        if parts.len() == 1 {
            Ok(parts.pop().expect("one part"))
        } else {
            Ok(RingExpr::Product(parts))
        }
    }

    fn term(&mut self) -> Result<RingExpr, ParseError> {
        const EXPECTED: &[&str] = &[
            "\"Z\"", "\"GF\"", "\"M\"", "\"T\"", "\"H\"", "\"TrivExt\"", "\"PolyQuot\"",
            "\"Morita\"", "\"(\"",
        ];
        match self.peek().1.clone() {
            Token::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(Token::RParen, "\")\"")?;
                Ok(inner)
            }
            Token::Name(name) => match name.as_str() {
                "Z" => {
                    self.advance();
                    self.expect(Token::LParen, "\"(\"")?;
                    let n = self.number()?;
                    self.expect(Token::RParen, "\")\"")?;
                    Ok(RingExpr::Zn(n))
                }
                "GF" => {
                    self.advance();
                    self.expect(Token::LParen, "\"(\"")?;
                    let q = self.number()?;
                    self.expect(Token::RParen, "\")\"")?;
                    Ok(RingExpr::Gf(q))
                }
                "M" => {
                    self.advance();
                    self.expect(Token::LParen, "\"(\"")?;
                    let n = self.arity()?;
                    self.expect(Token::Comma, "\",\"")?;
                    let base = self.expr()?;
                    self.expect(Token::RParen, "\")\"")?;
                    Ok(RingExpr::Matrix(n, Box::new(base)))
                }
                "T" => {
                    self.advance();
                    self.expect(Token::LParen, "\"(\"")?;
                    let n = self.arity()?;
                    self.expect(Token::Comma, "\",\"")?;
                    let base = self.expr()?;
                    self.expect(Token::RParen, "\")\"")?;
                    Ok(RingExpr::UpperTriangular(n, Box::new(base)))
                }
                "H" => {
                    self.advance();
                    self.expect(Token::LParen, "\"(\"")?;
                    let base = self.expr()?;
                    self.expect(Token::RParen, "\")\"")?;
                    Ok(RingExpr::Quaternion(Box::new(base)))
                }
                "TrivExt" => {
                    self.advance();
                    self.expect(Token::LParen, "\"(\"")?;
                    let base = self.expr()?;
                    self.expect(Token::RParen, "\")\"")?;
                    Ok(RingExpr::TrivialExtension(Box::new(base)))
                }
                "PolyQuot" => {
                    self.advance();
                    self.expect(Token::LParen, "\"(\"")?;
                    let base = self.expr()?;
                    self.expect(Token::Comma, "\",\"")?;
                    let n = self.arity()?;
                    self.expect(Token::RParen, "\")\"")?;
                    Ok(RingExpr::PolyQuot(Box::new(base), n))
                }
                "Morita" => {
                    self.advance();
                    self.expect(Token::LParen, "\"(\"")?;
                    let base = self.expr()?;
                    self.expect(Token::RParen, "\")\"")?;
                    Ok(RingExpr::Morita(Box::new(base)))
                }
                _ => self.fail(EXPECTED.to_vec()),
            },
            _ => self.fail(EXPECTED.to_vec()),
        }
    }
}

/// Parses the surface syntax into a validated expression tree.
pub fn parse_expr(text: &str) -> Result<RingExpr, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.expr()?;
    if parser.peek().1 != Token::End {
        return parser.fail(vec!["\"x\"", "end of input"]);
    }
    // Parameter validation: arities, moduli, prime powers.
    expr.order()?;
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u64) -> RingExpr {
        RingExpr::Zn(n)
    }

    #[test]
    fn basic_forms() {
        assert_eq!(
            parse_expr("M(2,Z(2))").unwrap(),
            RingExpr::Matrix(2, Box::new(z(2)))
        );
        assert_eq!(
            parse_expr("Z(2) x Z(4)").unwrap(),
            RingExpr::Product(vec![z(2), z(4)])
        );
        let pq = parse_expr("PolyQuot(GF(4),3)").unwrap();
        assert_eq!(pq, RingExpr::PolyQuot(Box::new(RingExpr::Gf(4)), 3));
        assert_eq!(pq.order(), Ok(64));
        assert_eq!(
            parse_expr("Morita(Z(2))").unwrap(),
            RingExpr::Morita(Box::new(z(2)))
        );
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(
            parse_expr(" T ( 3 , Z( 2 ) ) ").unwrap(),
            RingExpr::UpperTriangular(3, Box::new(z(2)))
        );
    }

    #[test]
    fn product_chains_flatten_and_parens_nest() {
        assert_eq!(
            parse_expr("Z(2) x Z(3) x Z(4)").unwrap(),
            RingExpr::Product(vec![z(2), z(3), z(4)])
        );
        assert_eq!(
            parse_expr("(Z(2) x Z(3)) x Z(4)").unwrap(),
            RingExpr::Product(vec![RingExpr::Product(vec![z(2), z(3)]), z(4)])
        );
    }

    #[test]
    fn semantic_errors() {
        assert_eq!(
            parse_expr("M(0,Z(2))").unwrap_err(),
            ParseError::Semantic(ExprError::MatrixArity)
        );
        assert_eq!(
            parse_expr("Z(0)").unwrap_err(),
            ParseError::Semantic(ExprError::ZeroModulus(0))
        );
        assert_eq!(
            parse_expr("GF(6)").unwrap_err(),
            ParseError::Semantic(ExprError::NotPrimePower(6))
        );
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse_expr("M(2 Z(2))").unwrap_err() {
            ParseError::Syntax { offset, expected, .. } => {
                assert_eq!(offset, 4);
                assert!(expected.contains(&"\",\""));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_expr("Q(2)").unwrap_err() {
            ParseError::Syntax { offset, .. } => assert_eq!(offset, 0),
            other => panic!("unexpected {other:?}"),
        }
        match parse_expr("Z(2) Z(3)").unwrap_err() {
            ParseError::Syntax { offset, .. } => assert_eq!(offset, 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    fn arb_expr() -> impl Strategy<Value = RingExpr> {
        let leaf = prop_oneof![
            (1u64..6).prop_map(RingExpr::Zn),
            prop_oneof![Just(2u64), Just(3), Just(4), Just(5), Just(8), Just(9)]
                .prop_map(RingExpr::Gf),
        ];
        leaf.prop_recursive(3, 16, 4, |inner| {
            prop_oneof![
                (1u32..4, inner.clone())
                    .prop_map(|(n, b)| RingExpr::Matrix(n, Box::new(b))),
                (1u32..4, inner.clone())
                    .prop_map(|(n, b)| RingExpr::UpperTriangular(n, Box::new(b))),
                // Singleton products are not parser-reachable: a one-factor
                // chain parses as the factor itself.
                prop::collection::vec(inner.clone(), 2..4).prop_map(RingExpr::Product),
                inner.clone().prop_map(|b| RingExpr::TrivialExtension(Box::new(b))),
                (inner.clone(), 1u32..4)
                    .prop_map(|(b, n)| RingExpr::PolyQuot(Box::new(b), n)),
                inner.clone().prop_map(|b| RingExpr::Quaternion(Box::new(b))),
                inner.prop_map(|b| RingExpr::Morita(Box::new(b))),
            ]
        })
    }

    proptest! {
        #[test]
        fn format_then_parse_round_trips(expr in arb_expr()) {
            let rendered = expr.to_string();
            let reparsed = parse_expr(&rendered).unwrap();
            prop_assert_eq!(expr, reparsed);
        }
    }
}
