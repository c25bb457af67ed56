//! Monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector, one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseOrder {
    Lex,
    Grevlex,
}

/// One block of a block (product) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub vars: Vec<usize>,
    pub inner: BaseOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[derive(Default)]
pub enum MonomialOrder {
    /// Lexicographic, `x_0 > x_1 > ...`.
    Lex,
    /// Graded reverse lexicographic, `x_0 > x_1 > ...`.
    #[default]
    Grevlex,
    /// Blocks compared in sequence; the first block dominates.
    Block(Vec<Block>),
}


impl MonomialOrder {
    /// Elimination order: `drop` first, the remaining variables second,
    /// grevlex inside both blocks.
    pub fn elimination(drop: &[usize], nvars: usize) -> MonomialOrder {
        let mut first: Vec<usize> = drop.to_vec();
        first.sort_unstable();
        first.dedup();
        let rest: Vec<usize> = (0..nvars).filter(|i| !first.contains(i)).collect();
        MonomialOrder::Block(vec![
            Block {
                vars: first,
                inner: BaseOrder::Grevlex,
            },
            Block {
                vars: rest,
                inner: BaseOrder::Grevlex,
            },
        ])
    }

    /// Checks that a block order partitions `0..nvars`.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        if let MonomialOrder::Block(blocks) = self {
            let mut seen = vec![false; nvars];
            for b in blocks {
                for &i in &b.vars {
                    if i >= nvars || seen[i] {
                        return Err(Error::Structural(format!(
                            "block order does not partition {nvars} variables"
                        )));
                    }
                    seen[i] = true;
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::Structural(format!(
                    "block order does not cover all {nvars} variables"
                )));
            }
        }
        Ok(())
    }

    /// Compares two monomials of equal length.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        let (a, b) = (a.exps(), b.exps());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Block(blocks) => {
                for block in blocks {
                    let ord = match block.inner {
                        BaseOrder::Lex => block
                            .vars
                            .iter()
                            .map(|&i| a[i])
                            .cmp(block.vars.iter().map(|&i| b[i])),
                        BaseOrder::Grevlex => grevlex_on(a, b, &block.vars),
                    };
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// [`cmp`](Self::cmp) with length checking.
    pub fn try_cmp(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.len() != b.len() {
            return Err(Error::Structural(format!(
                "monomial lengths differ ({} vs {})",
                a.len(),
                b.len()
            )));
        }
        self.validate(a.len())?;
        Ok(self.cmp(a, b))
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Block(_) => "block",
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

fn grevlex_on(a: &[u32], b: &[u32], idx: &[usize]) -> Ordering {
    let da: u64 = idx.iter().map(|&i| a[i] as u64).sum();
    let db: u64 = idx.iter().map(|&i| b[i] as u64).sum();
    da.cmp(&db).then_with(|| {
        for &i in idx.iter().rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_breaks_ties_reverse_lexicographically() {
        // x^2 y vs x y^2 with x > y
        assert_eq!(MonomialOrder::Grevlex.cmp(&m(&[2, 1]), &m(&[1, 2])), Ordering::Greater);
        // x y^2 z vs x^2 z^2: grlex says less, grevlex says greater
        assert_eq!(
            MonomialOrder::Grevlex.cmp(&m(&[1, 2, 1]), &m(&[2, 0, 2])),
            Ordering::Greater
        );
    }

    #[test]
    fn lex_compares_first_exponent() {
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 3])), Ordering::Greater);
    }

    #[test]
    fn reflexive() {
        for o in [MonomialOrder::Lex, MonomialOrder::Grevlex, MonomialOrder::elimination(&[1], 3)] {
            assert_eq!(o.cmp(&m(&[1, 2, 3]), &m(&[1, 2, 3])), Ordering::Equal);
        }
    }

    #[test]
    fn length_mismatch_is_structural() {
        assert!(MonomialOrder::Lex.try_cmp(&m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::elimination(&[2], 3);
        // z beats any power of x, y
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[9, 9, 0])), Ordering::Greater);
        assert!(o.validate(3).is_ok());
        let bad = MonomialOrder::Block(vec![Block { vars: vec![0, 0], inner: BaseOrder::Lex }]);
        assert!(bad.validate(2).is_err());
    }

    fn order_strategy() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::elimination(&[0, 2], 4)),
            Just(MonomialOrder::Block(vec![
                Block { vars: vec![3, 1], inner: BaseOrder::Lex },
                Block { vars: vec![0, 2], inner: BaseOrder::Grevlex },
            ])),
        ]
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, 4).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn total_and_multiplicative(o in order_strategy(), a in mono(), b in mono(), c in mono()) {
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(o.cmp(&b, &a), ab.reverse());
            prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab);
            // well-order compatibility: 1 is minimal
            prop_assert_ne!(o.cmp(&Monomial::one(4), &a), Ordering::Greater);
        }

        #[test]
        fn transitive(o in order_strategy(), a in mono(), b in mono(), c in mono()) {
            if o.cmp(&a, &b) == Ordering::Less && o.cmp(&b, &c) == Ordering::Less {
                prop_assert_eq!(o.cmp(&a, &c), Ordering::Less);
            }
        }
    }
}
