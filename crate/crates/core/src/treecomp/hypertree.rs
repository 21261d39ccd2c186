use super::algebra::LocalAlgebra;
use super::propagate::MessageForm;
use super::sequence::EliminationSequence;
use crate::error::{Error, Result};

/// Intermediate results `ψ_i^i` of a sequential elimination, kept for the
/// backward pass.
#[derive(Debug, Clone)]
pub struct HypertreeState<V> {
    pub form: MessageForm,
    pub psi: Vec<V>,
}

/// Eliminates `x_0, x_1, …` in turn, folding each `ψ_i` into `ψ_{b(i)}`.
/// Returns the marginal on the last domain.
pub fn hypertree_collect<A: LocalAlgebra>(
    alg: &A,
    seq: &EliminationSequence,
    factors: &[A::Value],
    form: MessageForm,
) -> Result<(A::Value, HypertreeState<A::Value>)> {
    if let Some(i) = seq.first_violation() {
        return Err(Error::InvalidSequence(format!("condition fails at position {i}")));
    }
    if factors.len() != seq.len() {
        return Err(Error::InvalidSequence(format!(
            "{} factors for a sequence of {}",
            factors.len(),
            seq.len()
        )));
    }
    for (i, f) in factors.iter().enumerate() {
        if alg.label(f) != *seq.domain(i) {
            return Err(Error::InvalidSequence(format!("factor {i} does not live on x_{i}")));
        }
    }
    let form = form.resolve(alg)?;
    let mut psi = factors.to_vec();
    for (i, &b) in seq.b().iter().enumerate() {
        let msg = match form {
            MessageForm::Transport => alg.transport(&psi[i], seq.domain(b))?,
            _ => alg.project(&psi[i], &seq.domain(i).intersection(seq.domain(b)))?,
        };
        psi[b] = alg.combine(&psi[b], &msg)?;
    }
    let result = psi.last().expect("nonempty sequence").clone();
    Ok((result, HypertreeState { form, psi }))
}

/// Backward pass `t_{x_i}(φ) = t_{x_i}(t_{x_{b(i)}}(φ)) · ψ_i^i`; needs an
/// idempotent algebra.
pub fn hypertree_distribute<A: LocalAlgebra>(
    alg: &A,
    seq: &EliminationSequence,
    state: &HypertreeState<A::Value>,
) -> Result<Vec<A::Value>> {
    if !alg.idempotent() {
        return Err(Error::Capability(format!(
            "hypertree distribute needs idempotent addition and multiplication, which {} lacks",
            alg.name()
        )));
    }
    if state.psi.len() != seq.len() {
        return Err(Error::MissingCache("collect state does not match the sequence".into()));
    }
    let n = seq.len();
    let mut out: Vec<Option<A::Value>> = vec![None; n];
    out[n - 1] = Some(state.psi[n - 1].clone());
    for i in (0..n - 1).rev() {
        let parent = out[seq.b()[i]].as_ref().expect("b(i) > i is already done");
        let mu = alg.transport(parent, seq.domain(i))?;
        out[i] = Some(alg.combine(&mu, &state.psi[i])?);
    }
    Ok(out.into_iter().map(|v| v.expect("filled")).collect())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::domain::{Domain, VariableCatalog};
    use crate::semiring::Semiring;
    use crate::treecomp::algebra::ValuationAlgebra;
    use crate::treecomp::propagate::naive_solve;
    use crate::valuation::Valuation;

    fn alg(s: Semiring) -> ValuationAlgebra {
        let cat = Arc::new(VariableCatalog::with_sizes([("X", 2), ("Y", 2), ("Z", 3)]).unwrap());
        ValuationAlgebra::new(s, cat)
    }

    fn three(a: &ValuationAlgebra, tables: [&[f64]; 3]) -> (EliminationSequence, Vec<Valuation>) {
        let c = &a.catalog;
        let ds = vec![c.domain(["X", "Y"]).unwrap(), c.domain(["Y", "Z"]).unwrap(), c.domain(["Z"]).unwrap()];
        let seq = EliminationSequence::new(ds.clone(), vec![1, 2]).unwrap();
        let fs = ds
            .into_iter()
            .zip(tables)
            .map(|(d, t)| Valuation::new(a.semiring, c.clone(), d, t.to_vec()).unwrap())
            .collect();
        (seq, fs)
    }

    #[test]
    fn single_domain() {
        let a = alg(Semiring::boolean());
        let d = a.catalog.domain(["X"]).unwrap();
        let f = Valuation::new(a.semiring, a.catalog.clone(), d.clone(), vec![1.0, 0.0]).unwrap();
        let seq = EliminationSequence::new(vec![d], vec![]).unwrap();
        let (r, st) = hypertree_collect(&a, &seq, std::slice::from_ref(&f), MessageForm::Auto).unwrap();
        assert_eq!(r, f);
        assert_eq!(hypertree_distribute(&a, &seq, &st).unwrap(), vec![f]);
    }

    #[test]
    fn boolean_three_matches_oracle() {
        let a = alg(Semiring::boolean());
        let (seq, fs) = three(&a, [&[1.0, 1.0, 0.0, 1.0], &[1.0, 0.0, 1.0, 0.0, 1.0, 1.0], &[0.0, 1.0, 1.0]]);
        let (r, st) = hypertree_collect(&a, &seq, &fs, MessageForm::Auto).unwrap();
        assert_eq!(r, naive_solve(&a, &fs, seq.domain(2)).unwrap());
        let all = hypertree_distribute(&a, &seq, &st).unwrap();
        for (i, m) in all.iter().enumerate() {
            assert_eq!(*m, naive_solve(&a, &fs, seq.domain(i)).unwrap());
        }
    }

    #[test]
    fn chain_lattice_matches_oracle() {
        let a = alg(Semiring::chain(4).unwrap());
        let (seq, fs) = three(&a, [&[3.0, 1.0, 2.0, 0.0], &[1.0, 2.0, 3.0, 3.0, 0.0, 2.0], &[2.0, 3.0, 1.0]]);
        let (_, st) = hypertree_collect(&a, &seq, &fs, MessageForm::Auto).unwrap();
        for (i, m) in hypertree_distribute(&a, &seq, &st).unwrap().iter().enumerate() {
            assert_eq!(*m, naive_solve(&a, &fs, seq.domain(i)).unwrap());
        }
    }

    #[test]
    fn tropical_maximum() {
        let a = alg(Semiring::tropical());
        let c = &a.catalog;
        let ds = vec![c.domain(["X", "Y"]).unwrap(), c.domain(["Y", "Z"]).unwrap(), Domain::empty()];
        let seq = EliminationSequence::new(ds.clone(), vec![1, 2]).unwrap();
        let t1 = [3.0, -1.0, 0.0, 4.0];
        let t2 = [2.0, f64::NEG_INFINITY, 1.0, -2.0, 5.0, 0.0];
        let fs = vec![
            Valuation::new(a.semiring, c.clone(), ds[0].clone(), t1.to_vec()).unwrap(),
            Valuation::new(a.semiring, c.clone(), ds[1].clone(), t2.to_vec()).unwrap(),
            Valuation::new(a.semiring, c.clone(), Domain::empty(), vec![0.0]).unwrap(),
        ];
        let (r, _) = hypertree_collect(&a, &seq, &fs, MessageForm::Auto).unwrap();
        let mut best = f64::NEG_INFINITY;
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..3 {
                    best = best.max(t1[x * 2 + y] + t2[y * 3 + z]);
                }
            }
        }
        assert_eq!(r.table(), &[best]);
        assert_eq!(best, 9.0);
    }

    #[test]
    fn arithmetic_distribute_is_refused() {
        let a = alg(Semiring::arithmetic());
        let (seq, fs) = three(&a, [&[0.5; 4], &[0.5; 6], &[1.0; 3]]);
        let (r, st) = hypertree_collect(&a, &seq, &fs, MessageForm::Auto).unwrap();
        assert!(r.approx_eq(&naive_solve(&a, &fs, seq.domain(2)).unwrap()));
        assert!(hypertree_distribute(&a, &seq, &st).unwrap_err().is_capability());
        assert!(hypertree_collect(&a, &seq, &fs, MessageForm::Transport).unwrap_err().is_capability());
    }

    #[test]
    fn rejects_invalid_input() {
        let a = alg(Semiring::boolean());
        let c = &a.catalog;
        let ds = vec![c.domain(["X", "Y"]).unwrap(), c.domain(["Z"]).unwrap(), c.domain(["X", "Z"]).unwrap()];
        let seq = EliminationSequence::new(ds.clone(), vec![1, 2]).unwrap();
        let fs: Vec<Valuation> = ds
            .iter()
            .map(|d| Valuation::unit(a.semiring, c.clone(), d.clone()).unwrap())
            .collect();
        assert!(matches!(
            hypertree_collect(&a, &seq, &fs, MessageForm::Auto),
            Err(Error::InvalidSequence(_))
        ));
    }
}
