//! Candidate-count and asymptotic-cost estimates for the exact linear
//! l-regular classes, parameterized by (l, k) alone: the class fixes
//! m = 1 + k(l-1) and n = k^2 - k(k-1)/l, the sweep size is C(n, m/l),
//! and for growing k the sweep cost is exp(f(l)·sqrt(n)·ln(n)) up to
//! polynomial corrections.

use num_bigint::BigUint;

use super::EngineError;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityEstimate {
    pub l: u32,
    pub k: u32,
    pub m: u64,
    pub n: u64,
    /// Number of true variables in any candidate, m/l.
    pub v: u64,
    /// Exact sweep size C(n, v).
    pub pseudomodel_count: BigUint,
    /// f(l) * sqrt(n) * ln(n).
    pub asymptotic_exponent: f64,
}

/// The rate constant f(l) = r(1 - r ln r) with r = sqrt((l-1)/l).
pub fn subexponential_rate(l: u32) -> f64 {
    assert!(l >= 1, "regularity is at least 1");
    if l == 1 {
        // r = 0; the r ln r term vanishes in the limit
        return 0.0;
    }
    let r = ((f64::from(l) - 1.0) / f64::from(l)).sqrt();
    r * (1.0 - r * r.ln())
}

pub fn complexity_estimate(l: u32, k: u32) -> Result<ComplexityEstimate, EngineError> {
    assert!(l >= 1 && k >= 1, "parameters are positive");
    let (lk, kk) = (u64::from(l), u64::from(k));
    if kk * (kk - 1) % lk != 0 {
        return Err(EngineError::ClassEmpty { l, k });
    }
    let m = 1 + kk * (lk - 1);
    let n = kk * kk - kk * (kk - 1) / lk;
    if m % lk != 0 {
        return Err(EngineError::VUndefined { l, k, m });
    }
    let v = m / lk;
    let pseudomodel_count = num_integer::binomial(BigUint::from(n), BigUint::from(v));
    let nf = n as f64;
    let asymptotic_exponent = subexponential_rate(l) * nf.sqrt() * nf.ln();
    Ok(ComplexityEstimate {
        l,
        k,
        m,
        n,
        v,
        pseudomodel_count,
        asymptotic_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_l3_k7_class() {
        let est = complexity_estimate(3, 7).unwrap();
        assert_eq!(est.m, 15);
        assert_eq!(est.n, 35);
        assert_eq!(est.v, 5);
        assert_eq!(est.pseudomodel_count, BigUint::from(324_632u32));
    }

    #[test]
    fn the_l2_k3_class() {
        let est = complexity_estimate(2, 3).unwrap();
        assert_eq!(est.m, 4);
        assert_eq!(est.n, 6);
        assert_eq!(est.v, 2);
        assert_eq!(est.pseudomodel_count, BigUint::from(15u32));
    }

    #[test]
    fn rate_constant_values() {
        assert!((subexponential_rate(3) - 0.9516).abs() < 5e-4);
        assert!((subexponential_rate(2) - 0.8804).abs() < 5e-4);
        assert_eq!(subexponential_rate(1), 0.0);
    }

    #[test]
    fn empty_class_is_rejected() {
        assert_eq!(
            complexity_estimate(3, 5).unwrap_err(),
            EngineError::ClassEmpty { l: 3, k: 5 }
        );
    }

    #[test]
    fn unsat_class_has_no_candidate_size() {
        // l = 3, k = 3 gives m = 7, not a multiple of 3
        assert_eq!(
            complexity_estimate(3, 3).unwrap_err(),
            EngineError::VUndefined { l: 3, k: 3, m: 7 }
        );
    }

    #[test]
    fn block_design_parameters() {
        // k = l classes always satisfy the divisibility requirement but
        // never the candidate-size one (m = 1 + k(k-1))
        for k in 2..10u32 {
            assert!(matches!(
                complexity_estimate(k, k),
                Err(EngineError::VUndefined { .. })
            ));
        }
    }
}
