use std::fmt;

use serde::{Deserialize, Serialize};

use super::length::{lv_add, lv_compare, LengthValue, LvOrdering};

/// A leading term `r · t^d`, or the zero monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MuMonomial {
    Zero,
    Term { coeff: LengthValue, degree: usize },
}

impl MuMonomial {
    /// A zero coefficient collapses to the zero monomial.
    pub fn new(coeff: LengthValue, degree: usize) -> Self {
        if coeff.is_zero() {
            MuMonomial::Zero
        } else {
            MuMonomial::Term { coeff, degree }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MuMonomial::Zero)
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            MuMonomial::Zero => None,
            MuMonomial::Term { degree, .. } => Some(*degree),
        }
    }

    pub fn coeff(&self) -> LengthValue {
        match self {
            MuMonomial::Zero => LengthValue::zero(),
            MuMonomial::Term { coeff, .. } => coeff.clone(),
        }
    }
}

/// Higher degree wins; equal degrees add.
pub fn mu_oplus(a: &MuMonomial, b: &MuMonomial) -> MuMonomial {
    match (a, b) {
        (MuMonomial::Zero, x) | (x, MuMonomial::Zero) => x.clone(),
        (
            MuMonomial::Term { coeff: r, degree: n },
            MuMonomial::Term { coeff: s, degree: m },
        ) => {
            if n > m {
                a.clone()
            } else if m > n {
                b.clone()
            } else {
                MuMonomial::new(lv_add(r, s), *n)
            }
        }
    }
}

/// Order on monomials: degree first, then coefficient.
pub fn mu_compare(a: &MuMonomial, b: &MuMonomial, precision: u32) -> LvOrdering {
    match (a.degree(), b.degree()) {
        (None, None) => LvOrdering::Equal,
        (None, Some(_)) => LvOrdering::Less,
        (Some(_), None) => LvOrdering::Greater,
        (Some(n), Some(m)) if n > m => LvOrdering::Greater,
        (Some(n), Some(m)) if n < m => LvOrdering::Less,
        _ => lv_compare(&a.coeff(), &b.coeff(), precision),
    }
}

/// Least upper bound of two monomials in the degree-then-coefficient order.
///
/// Incomparable coefficients (numerically indistinguishable at the cap) keep `b`.
pub fn mu_join(a: &MuMonomial, b: &MuMonomial) -> MuMonomial {
    match mu_compare(a, b, 64) {
        LvOrdering::Greater => a.clone(),
        _ => b.clone(),
    }
}

impl fmt::Display for MuMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuMonomial::Zero => write!(f, "0"),
            MuMonomial::Term { coeff, degree } => write!(f, "({coeff})·t^{degree}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::lv_of_group_order;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn lg(n: u64) -> LengthValue {
        lv_of_group_order(&BigUint::from(n))
    }

    #[test]
    fn oplus_cases() {
        let a = MuMonomial::new(lg(2), 1);
        let b = MuMonomial::new(lg(3), 0);
        assert_eq!(mu_oplus(&a, &b), a);
        let c = MuMonomial::new(lg(3), 1);
        assert_eq!(mu_oplus(&a, &c), MuMonomial::new(lg(6), 1));
        assert_eq!(mu_oplus(&MuMonomial::Zero, &c), c);
    }

    #[test]
    fn join_is_max() {
        let a = MuMonomial::new(lg(2), 1);
        let b = MuMonomial::new(lg(6), 1);
        assert_eq!(mu_join(&a, &b), b);
        assert_eq!(mu_join(&b, &a), b);
        assert_eq!(mu_join(&MuMonomial::new(lg(1000), 0), &a), a);
    }

    #[test]
    fn display() {
        assert_eq!(MuMonomial::new(lg(5), 1).to_string(), "(log 5)·t^1");
        assert_eq!(MuMonomial::Zero.to_string(), "0");
    }

    fn arb_mu() -> impl Strategy<Value = MuMonomial> {
        prop_oneof![
            1 => Just(MuMonomial::Zero),
            1 => (0usize..3).prop_map(|d| MuMonomial::new(LengthValue::Infinite, d)),
            6 => (1u64..60, 0usize..3).prop_map(|(n, d)| MuMonomial::new(lg(n), d)),
        ]
    }

    proptest! {
        #[test]
        fn oplus_monoid(a in arb_mu(), b in arb_mu(), c in arb_mu()) {
            prop_assert_eq!(mu_oplus(&a, &b), mu_oplus(&b, &a));
            prop_assert_eq!(mu_oplus(&mu_oplus(&a, &b), &c), mu_oplus(&a, &mu_oplus(&b, &c)));
            prop_assert_eq!(mu_oplus(&a, &MuMonomial::Zero), a.clone());
        }

        #[test]
        fn join_assoc(a in arb_mu(), b in arb_mu(), c in arb_mu()) {
            prop_assert_eq!(mu_join(&mu_join(&a, &b), &c), mu_join(&a, &mu_join(&b, &c)));
        }
    }
}
