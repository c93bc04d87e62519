//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

type Exps = SmallVec<[u16; 8]>;

/// A monomial `x_1^{a_1} ... x_n^{a_n}`, stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Exps,
}

impl Monomial {
    pub fn new(exps: &[u16]) -> Monomial {
        Monomial { exps: Exps::from_slice(exps) }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: smallvec::smallvec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Indices of variables occurring with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// `Some(i)` when the monomial is `x_i^a` with `a > 0`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut it = self.support();
        match (it.next(), it.next()) {
            (Some(i), None) => Some(i),
            _ => None,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial { exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect() })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Re-indexes variables: entry `j` of the result is `self.exps[map[j]]`.
    pub fn select(&self, map: &[usize]) -> Monomial {
        Monomial { exps: map.iter().map(|&i| self.exps[i]).collect() }
    }

    /// Inserts `count` zero exponents in front.
    pub fn shift(&self, count: usize) -> Monomial {
        let mut exps: Exps = smallvec::smallvec![0; count];
        exps.extend_from_slice(&self.exps);
        Monomial { exps }
    }
}

/// Monomial orders. `Elimination(k)` compares the first `k` variables by
/// grevlex and breaks ties by grevlex on the remaining ones, so any monomial
/// involving one of the first `k` variables beats every monomial that does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    Elimination(usize),
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex(&a.exps, &b.exps),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination(k) => {
                let k = (*k).min(a.exps.len());
                grevlex(&a.exps[..k], &b.exps[..k]).then_with(|| grevlex(&a.exps[k..], &b.exps[k..]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ORDERS: [MonomialOrder; 4] = [
        MonomialOrder::GrevLex,
        MonomialOrder::Lex,
        MonomialOrder::Elimination(1),
        MonomialOrder::Elimination(2),
    ];

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..4, 3).prop_map(|v| Monomial::new(&v))
    }

    #[test]
    fn grevlex_small_cases() {
        let o = MonomialOrder::GrevLex;
        // X^2 > XY > Y^2 > XZ > YZ > Z^2 in k[X,Y,Z]
        let seq = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]];
        for w in seq.windows(2) {
            assert_eq!(o.cmp(&Monomial::new(&w[0]), &Monomial::new(&w[1])), Ordering::Greater);
        }
    }

    #[test]
    fn elimination_order_eliminates() {
        let o = MonomialOrder::Elimination(1);
        let t = Monomial::new(&[1, 0, 0]);
        let big = Monomial::new(&[0, 5, 5]);
        assert_eq!(o.cmp(&t, &big), Ordering::Greater);
    }

    proptest! {
        #[test]
        fn orders_are_total_multiplicative_and_well_founded(a in mono(), b in mono(), c in mono()) {
            for o in ORDERS {
                let ab = o.cmp(&a, &b);
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(ab.reverse(), o.cmp(&b, &a));
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab);
                prop_assert_ne!(o.cmp(&a, &Monomial::one(3)), Ordering::Less);
                if ab == Ordering::Less && o.cmp(&b, &c) == Ordering::Less {
                    prop_assert_eq!(o.cmp(&a, &c), Ordering::Less);
                }
            }
        }
    }
}
