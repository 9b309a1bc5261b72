//! Chain-structured decision.
//!
//! A p-chain is decided through its generator: a generator model is
//! replicated across the links (y_{s+λn} = y_s), which also balances
//! every entangled literal pair, and the replica is verified against
//! the full chain. Verification failing is not assumed impossible; the
//! decision falls back to sweeping the whole chain and flags that in
//! the statistics.

use crate::formula::{Assignment, Formula};
use crate::generators::ChainSpec;

use super::{pseudomodel_decide, EngineConfig, EngineError, Method, Verdict};

pub fn chain_decide(
    spec: &ChainSpec,
    f: &Formula,
    cfg: &EngineConfig,
) -> Result<Verdict, EngineError> {
    let rebuilt = spec
        .instantiate()
        .map_err(|e| EngineError::SpecMismatch(e.to_string()))?;
    if &rebuilt != f {
        return Err(EngineError::SpecMismatch(
            "formula does not match the chain built from the specification".into(),
        ));
    }

    let generator = spec.generator();
    let generator_verdict = pseudomodel_decide(generator, cfg)?;
    let Some(generator_model) = generator_verdict.model else {
        return Ok(Verdict::unsat(Method::Chain, generator_verdict.stats));
    };

    let n0 = generator.n();
    let p = spec.p() as usize;
    let mut values = Vec::with_capacity(n0 * p);
    for _ in 0..p {
        values.extend_from_slice(generator_model.values());
    }
    let replicated = Assignment::from_values(values);
    if f.is_xsat_model(&replicated).expect("domains match") {
        return Ok(Verdict::sat(
            replicated,
            Method::Chain,
            generator_verdict.stats,
        ));
    }

    let mut fallback = pseudomodel_decide(f, cfg)?;
    fallback.stats.replication_fallback = true;
    Ok(fallback)
}

#[cfg(test)]
mod tests {
    use super::super::tests::monotone;
    use super::*;
    use crate::engine::{brute_force_decide, Status};
    use crate::generators::{entangle, gen_linear_chain, EntanglementOp};

    fn k4() -> Formula {
        monotone(&[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6], &[3, 5, 6]])
    }

    #[test]
    fn plain_two_chain_of_k4_is_sat() {
        let (chain, spec) = gen_linear_chain(&k4(), 2).unwrap();
        let v = chain_decide(&spec, &chain, &EngineConfig::default()).unwrap();
        assert_eq!(v.status, Status::Sat);
        assert_eq!(v.method, Method::Chain);
        let trues: Vec<u32> = v.model.unwrap().true_vars().iter().map(|x| x.index()).collect();
        assert_eq!(trues, vec![1, 6, 7, 12]);
        assert!(!v.stats.replication_fallback);
    }

    #[test]
    fn entangled_two_chain_still_replicates() {
        let (chain, spec) = gen_linear_chain(&k4(), 2).unwrap();
        let op = EntanglementOp {
            link: 1,
            clause: 1,
            var: 1,
        };
        let (chain, spec) = entangle(&chain, &spec, op).unwrap();
        let v = chain_decide(&spec, &chain, &EngineConfig::default()).unwrap();
        assert_eq!(v.status, Status::Sat);
        assert!(!v.stats.replication_fallback);
        let brute = brute_force_decide(&chain, 25).unwrap();
        assert_eq!(v.status, brute.status);
    }

    #[test]
    fn chain_of_unsat_generator_is_unsat() {
        let triangle = monotone(&[&[1, 2], &[2, 3], &[1, 3]]);
        let (chain, spec) = gen_linear_chain(&triangle, 2).unwrap();
        let v = chain_decide(&spec, &chain, &EngineConfig::default()).unwrap();
        assert_eq!(v.status, Status::Unsat);
        assert_eq!(v.method, Method::Chain);
        let brute = brute_force_decide(&chain, 25).unwrap();
        assert_eq!(brute.status, Status::Unsat);
    }

    #[test]
    fn mismatched_formula_is_rejected() {
        let (_, spec) = gen_linear_chain(&k4(), 2).unwrap();
        let other = k4();
        let err = chain_decide(&spec, &other, &EngineConfig::default()).unwrap_err();
        assert!(matches!(err, EngineError::SpecMismatch(_)));
    }
}
