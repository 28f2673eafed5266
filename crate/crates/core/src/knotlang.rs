//! The knot-construction expression language: AST, recursive-descent
//! parser, canonical formatting, and structural classification.
//!
//! Grammar:
//!
//! ```text
//! expr  := term ('#' term)*                      (left-associative sum)
//! term  := 'U'
//!        | 'T' '(' int ',' int ')'               torus knot, |p| > q >= 2
//!        | 'K' '(' int ')'                       n-twist knot
//!        | 'J' '(' int ',' int ')'               double twist, both even
//!        | 'cable' '(' int ',' int ';' expr ')'
//!        | 'D' '[' int ']' '(' expr ')'          twisted Whitehead double
//!        | 'D' '[' int ',' int ']' '(' expr ')'  double twisted double
//!        | 'mirror' '(' expr ')'
//!        | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. `K(0)` and `K(1)` are canonicalized at
//! construction to the unknot and the (3,2)-torus knot.

use crate::error::{Error, Result};
use crate::families;
use serde::Serialize;

/// Knot construction tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum KnotExpr {
    Unknot,
    Torus {
        p: i64,
        q: i64,
    },
    Twist {
        n: i64,
    },
    /// `J(2m, 2n)`; the stored parameters are the half-counts.
    DoubleTwist {
        m: i64,
        n: i64,
    },
    Cable {
        p: i64,
        q: i64,
        inner: Box<KnotExpr>,
    },
    Sum {
        left: Box<KnotExpr>,
        right: Box<KnotExpr>,
    },
    WhiteheadDouble {
        n: i64,
        inner: Box<KnotExpr>,
    },
    DoubleTwistedDouble {
        m: i64,
        n: i64,
        inner: Box<KnotExpr>,
    },
    Mirror {
        inner: Box<KnotExpr>,
    },
}

impl KnotExpr {
    pub fn torus(p: i64, q: i64) -> Result<KnotExpr> {
        families::validate_torus(p, q)?;
        Ok(KnotExpr::Torus { p, q })
    }

    /// `K(0)` is the unknot and `K(1)` the right-handed trefoil `T(3,2)`;
    /// both canonicalize at construction so the engine treats them as graph
    /// knots.
    pub fn twist(n: i64) -> KnotExpr {
        match n {
            0 => KnotExpr::Unknot,
            1 => KnotExpr::Torus { p: 3, q: 2 },
            n => KnotExpr::Twist { n },
        }
    }

    pub fn cable(p: i64, q: i64, inner: KnotExpr) -> Result<KnotExpr> {
        if q < 2 || p == 0 || gcd(p, q) != 1 {
            return Err(Error::InvalidCable {
                p,
                q,
                reason: "cable requires gcd(|p|, q) = 1, q >= 2 and p nonzero",
            });
        }
        Ok(KnotExpr::Cable {
            p,
            q,
            inner: Box::new(inner),
        })
    }

    pub fn sum(left: KnotExpr, right: KnotExpr) -> KnotExpr {
        KnotExpr::Sum {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn mirror(inner: KnotExpr) -> KnotExpr {
        KnotExpr::Mirror {
            inner: Box::new(inner),
        }
    }

    pub fn whitehead_double(n: i64, inner: KnotExpr) -> KnotExpr {
        KnotExpr::WhiteheadDouble {
            n,
            inner: Box::new(inner),
        }
    }

    pub fn double_twisted_double(m: i64, n: i64, inner: KnotExpr) -> KnotExpr {
        KnotExpr::DoubleTwistedDouble {
            m,
            n,
            inner: Box::new(inner),
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Structural classification: graph knots are generated from the unknot by
/// cabling, connected sums, and mirrors; twist knots outside {0, 1},
/// double twists, and doubles fall outside. Cables and sums preserve the
/// weakest class of their parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KnotClass {
    GraphKnot,
    IntegerPseudoGraph,
    Other,
}

pub fn classify(e: &KnotExpr) -> KnotClass {
    use KnotClass::*;
    match e {
        KnotExpr::Unknot | KnotExpr::Torus { .. } => GraphKnot,
        KnotExpr::Twist { .. } | KnotExpr::DoubleTwist { .. } => Other,
        KnotExpr::WhiteheadDouble { .. } | KnotExpr::DoubleTwistedDouble { .. } => Other,
        KnotExpr::Mirror { inner } => classify(inner),
        // closure under cabling and sums: the composite is no better than
        // its worst part
        KnotExpr::Cable { inner, .. } => classify(inner).max(GraphKnot),
        KnotExpr::Sum { left, right } => classify(left).max(classify(right)),
    }
}

/// Canonical text; `parse(format(e)) == e` for valid trees.
pub fn format(e: &KnotExpr) -> String {
    match e {
        KnotExpr::Unknot => "U".into(),
        KnotExpr::Torus { p, q } => format!("T({p},{q})"),
        KnotExpr::Twist { n } => format!("K({n})"),
        KnotExpr::DoubleTwist { m, n } => format!("J({},{})", 2 * m, 2 * n),
        KnotExpr::Cable { p, q, inner } => format!("cable({p},{q}; {})", format(inner)),
        KnotExpr::Sum { left, right } => {
            let rhs = if matches!(**right, KnotExpr::Sum { .. }) {
                format!("({})", format(right))
            } else {
                format(right)
            };
            format!("{} # {}", format(left), rhs)
        }
        KnotExpr::WhiteheadDouble { n, inner } => format!("D[{n}]({})", format(inner)),
        KnotExpr::DoubleTwistedDouble { m, n, inner } => {
            format!("D[{m},{n}]({})", format(inner))
        }
        KnotExpr::Mirror { inner } => format!("mirror({})", format(inner)),
    }
}

pub fn parse(src: &str) -> Result<KnotExpr> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') || self.src.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return self.err("expected integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer out of range".into(),
            })
    }

    fn expr(&mut self) -> Result<KnotExpr> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'#') {
            self.pos += 1;
            let rhs = self.term()?;
            acc = KnotExpr::sum(acc, rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<KnotExpr> {
        match self.peek() {
            Some(b'U') => {
                self.pos += 1;
                Ok(KnotExpr::Unknot)
            }
            Some(b'T') => {
                self.pos += 1;
                self.expect(b'(')?;
                let p = self.integer()?;
                self.expect(b',')?;
                let q = self.integer()?;
                self.expect(b')')?;
                KnotExpr::torus(p, q)
            }
            Some(b'K') => {
                self.pos += 1;
                self.expect(b'(')?;
                let n = self.integer()?;
                self.expect(b')')?;
                Ok(KnotExpr::twist(n))
            }
            Some(b'J') => {
                self.pos += 1;
                self.expect(b'(')?;
                let a = self.integer()?;
                self.expect(b',')?;
                let b = self.integer()?;
                self.expect(b')')?;
                if a % 2 != 0 || b % 2 != 0 {
                    return Err(Error::Validation {
                        msg: format!("J({a},{b}): both twist counts must be even"),
                    });
                }
                Ok(KnotExpr::DoubleTwist { m: a / 2, n: b / 2 })
            }
            Some(b'c') => {
                self.keyword("cable")?;
                self.expect(b'(')?;
                let p = self.integer()?;
                self.expect(b',')?;
                let q = self.integer()?;
                self.expect(b';')?;
                let inner = self.expr()?;
                self.expect(b')')?;
                KnotExpr::cable(p, q, inner)
            }
            Some(b'm') => {
                self.keyword("mirror")?;
                self.expect(b'(')?;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(KnotExpr::mirror(inner))
            }
            Some(b'D') => {
                self.pos += 1;
                self.expect(b'[')?;
                let first = self.integer()?;
                let second = if self.peek() == Some(b',') {
                    self.pos += 1;
                    Some(self.integer()?)
                } else {
                    None
                };
                self.expect(b']')?;
                self.expect(b'(')?;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(match second {
                    None => KnotExpr::whitehead_double(first, inner),
                    Some(n) => KnotExpr::double_twisted_double(first, n, inner),
                })
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            _ => self.err("expected a knot constructor"),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            Ok(())
        } else {
            self.err(format!("expected '{word}'"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_basic_constructions() {
        assert_eq!(
            parse("T(3,2) # K(-1)").unwrap(),
            KnotExpr::sum(KnotExpr::Torus { p: 3, q: 2 }, KnotExpr::Twist { n: -1 })
        );
        assert_eq!(
            parse("cable(7,2; T(3,2))").unwrap(),
            KnotExpr::cable(7, 2, KnotExpr::Torus { p: 3, q: 2 }).unwrap()
        );
        assert_eq!(
            parse("D[3](U)").unwrap(),
            KnotExpr::whitehead_double(3, KnotExpr::Unknot)
        );
        assert_eq!(
            parse("D[2,5](T(5,2))").unwrap(),
            KnotExpr::double_twisted_double(2, 5, KnotExpr::Torus { p: 5, q: 2 })
        );
        assert_eq!(
            parse("J(2,-2)").unwrap(),
            KnotExpr::DoubleTwist { m: 1, n: -1 }
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse("T(4,2)"), Err(Error::InvalidTorus { .. })));
        assert!(matches!(parse("T(2,3)"), Err(Error::InvalidTorus { .. })));
        assert!(matches!(parse("J(3,2)"), Err(Error::Validation { .. })));
        assert!(matches!(parse("cable(2,4; U)"), Err(Error::InvalidCable { .. })));
        assert!(matches!(parse("T(3,2) #"), Err(Error::Parse { .. })));
        assert!(matches!(parse("Q"), Err(Error::Parse { .. })));
        assert!(matches!(parse("T(3,2) T(5,2)"), Err(Error::Parse { .. })));
        // error position points at the offending token
        match parse("T(3,2) # W") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn twist_canonicalization() {
        assert_eq!(parse("K(0)").unwrap(), KnotExpr::Unknot);
        assert_eq!(parse("K(1)").unwrap(), KnotExpr::Torus { p: 3, q: 2 });
        assert_eq!(parse("K(2)").unwrap(), KnotExpr::Twist { n: 2 });
    }

    #[test]
    fn sums_are_left_associative() {
        let e = parse("U # T(3,2) # T(5,2)").unwrap();
        assert_eq!(
            e,
            KnotExpr::sum(
                KnotExpr::sum(KnotExpr::Unknot, KnotExpr::Torus { p: 3, q: 2 }),
                KnotExpr::Torus { p: 5, q: 2 }
            )
        );
    }

    #[test]
    fn classify_cases() {
        let graph = parse("cable(5,2; T(3,2) # T(5,2))").unwrap();
        assert_eq!(classify(&graph), KnotClass::GraphKnot);
        assert_eq!(classify(&parse("K(-1)").unwrap()), KnotClass::Other);
        assert_eq!(classify(&parse("K(1)").unwrap()), KnotClass::GraphKnot);
        assert_eq!(classify(&parse("mirror(T(3,2))").unwrap()), KnotClass::GraphKnot);
        assert_eq!(classify(&parse("J(2,2)").unwrap()), KnotClass::Other);
        // sums and cables inherit the weakest class
        assert_eq!(
            classify(&parse("T(3,2) # K(2)").unwrap()),
            KnotClass::Other
        );
        assert_eq!(
            classify(&parse("cable(3,2; D[1](T(3,2)))").unwrap()),
            KnotClass::Other
        );
    }

    #[test]
    fn format_cases() {
        assert_eq!(format(&KnotExpr::Torus { p: 3, q: 2 }), "T(3,2)");
        assert_eq!(
            format(&KnotExpr::mirror(KnotExpr::Twist { n: 2 })),
            "mirror(K(2))"
        );
        // right-nested sums get grouping parentheses
        let e = KnotExpr::sum(
            KnotExpr::Unknot,
            KnotExpr::sum(KnotExpr::Torus { p: 3, q: 2 }, KnotExpr::Unknot),
        );
        assert_eq!(format(&e), "U # (T(3,2) # U)");
        assert_eq!(parse(&format(&e)).unwrap(), e);
    }

    #[test]
    fn json_ast_export() {
        let e = parse("D[2](T(3,2))").unwrap();
        let json = serde_json::to_value(&e).unwrap();
        assert_eq!(json["type"], "whitehead_double");
        assert_eq!(json["inner"]["type"], "torus");
        assert_eq!(json["inner"]["p"], 3);
    }

    fn arb_expr(depth: u32) -> BoxedStrategy<KnotExpr> {
        let leaf = prop_oneof![
            Just(KnotExpr::Unknot),
            (2i64..=7, prop_oneof![Just(2i64), Just(3), Just(5)])
                .prop_filter_map("torus params", |(p, q)| {
                    let p = if p % 2 == 0 { p + 7 } else { p + 6 };
                    KnotExpr::torus(p, q).ok()
                }),
            (-4i64..=4).prop_map(KnotExpr::twist),
            (-3i64..=3, -3i64..=3).prop_map(|(m, n)| KnotExpr::DoubleTwist { m, n }),
        ];
        if depth == 0 {
            leaf.boxed()
        } else {
            let inner = arb_expr(depth - 1);
            prop_oneof![
                leaf,
                (3i64..=7, 2i64..=3, inner.clone()).prop_filter_map("cable", |(p, q, e)| {
                    KnotExpr::cable(p, q, e).ok()
                }),
                (inner.clone(), arb_expr(depth - 1)).prop_map(|(a, b)| KnotExpr::sum(a, b)),
                (-3i64..=3, inner.clone()).prop_map(|(n, e)| KnotExpr::whitehead_double(n, e)),
                (-2i64..=2, -2i64..=2, inner.clone())
                    .prop_map(|(m, n, e)| KnotExpr::double_twisted_double(m, n, e)),
                inner.prop_map(KnotExpr::mirror),
            ]
            .boxed()
        }
    }

    proptest! {
        #[test]
        fn round_trip(e in arb_expr(5)) {
            prop_assert_eq!(parse(&format(&e)).unwrap(), e);
        }

        #[test]
        fn sum_classification_law(a in arb_expr(2), b in arb_expr(2)) {
            let sum = KnotExpr::sum(a.clone(), b.clone());
            let both_graph =
                classify(&a) == KnotClass::GraphKnot && classify(&b) == KnotClass::GraphKnot;
            prop_assert_eq!(classify(&sum) == KnotClass::GraphKnot, both_graph);
        }
    }
}
