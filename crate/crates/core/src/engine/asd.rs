use num_rational::BigRational;

use crate::engine::case::{Requirement, Value, Verdict};
use crate::error::{Error, Result};
use crate::exact::{ensure_prime, rat_congruent, vp_unchecked, Valuation};

/// A generic Atkin-Swinnerton-Dyer type statement
/// `a_{idx(n, α)} ≡ λ a_{idx(n, α-1)} (mod p^{exponent(α)})`.
pub struct AsdSpec<'a> {
    pub sequence: Box<dyn Fn(u64) -> BigRational + Sync + 'a>,
    pub multiplier: BigRational,
    pub exponent: Box<dyn Fn(u32) -> u32 + Sync + 'a>,
    pub index: Box<dyn Fn(u64, u32) -> u64 + Sync + 'a>,
}

pub fn asd_check(spec: &AsdSpec<'_>, p: u64, n: u64, alpha: u32) -> Result<Verdict> {
    ensure_prime(p)?;
    if n == 0 || alpha == 0 {
        return Err(Error::invalid("asd_check requires n >= 1 and alpha >= 1"));
    }
    if let Valuation::Finite(v) = vp_unchecked(&spec.multiplier, p) {
        if v < 0 {
            return Err(Error::NotPIntegral { p, valuation: v });
        }
    }
    let upper = (spec.sequence)((spec.index)(n, alpha));
    let lower = (spec.sequence)((spec.index)(n, alpha - 1));
    let rhs = &spec.multiplier * lower;
    let required = (spec.exponent)(alpha);
    let c = rat_congruent(&upper, &rhs, p, required)?;
    Ok(Verdict {
        lhs: Value::Exact(upper),
        rhs: Value::Exact(rhs),
        required: Requirement::Exponent(required),
        achieved: Some(c.achieved),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::series::apery;

    fn apery_spec() -> AsdSpec<'static> {
        AsdSpec {
            sequence: Box::new(|i| int(apery(i))),
            multiplier: int(1),
            exponent: Box::new(|a| 3 * a),
            index: Box::new(|n, a| n * 5u64.pow(a) - 1),
        }
    }

    #[test]
    fn apery_anchor() {
        let v = asd_check(&apery_spec(), 5, 1, 1).unwrap();
        assert_eq!(v.achieved, Some(Valuation::Finite(3)));
        assert!(v.holds());
        assert_eq!(v.lhs, Value::Exact(int(33001)));
    }

    #[test]
    fn constant_sequence() {
        let spec = AsdSpec {
            sequence: Box::new(|_| int(7)),
            multiplier: int(1),
            exponent: Box::new(|a| a),
            index: Box::new(|n, a| n * 3u64.pow(a)),
        };
        let v = asd_check(&spec, 3, 2, 4).unwrap();
        assert_eq!(v.achieved, Some(Valuation::Infinite));
    }

    #[test]
    fn rejects_non_integral_multiplier() {
        let mut spec = apery_spec();
        spec.multiplier = crate::exact::rat(1, 5);
        assert!(matches!(
            asd_check(&spec, 5, 1, 1),
            Err(Error::NotPIntegral { .. })
        ));
    }
}
