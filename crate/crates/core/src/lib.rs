//! Generic local computation over semiring valuations and set potentials.
//!
//! The crate is organised bottom-up: [`domain`] fixes variables and
//! configurations, [`semiring`] and [`valuation`] provide dense semiring
//! tables, [`belief`] sparse belief-function potentials, [`partition`] the
//! partition lattice with its independence relation, and [`treecomp`] join
//! trees, message passing and hypertree elimination.

pub mod belief;
pub mod compare;
pub mod domain;
pub mod error;
pub mod partition;
pub mod random;
pub mod report;
pub mod semiring;
pub mod treecomp;
pub mod valuation;

pub use compare::Tolerance;
pub use domain::{cond_indep_subsets, restrict, Configuration, Domain, VarId, VariableCatalog};
pub use error::{Error, Result};
pub use partition::{cond_indep_partitions, Partition, Universe};
pub use report::{CheckReport, LawResult, Outcome};
pub use semiring::{check_semiring_axioms, Flags, Semiring};
pub use valuation::{check_valuation_axioms, Valuation};

/// Formats a number with at most 12 significant digits, `%g` style.
/// The tropical zero prints as `-inf`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::fmt_num;

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_num(0.15), "0.15");
        assert_eq!(fmt_num(3.0 / 7.0), "0.428571428571");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(5.0), "5");
        assert_eq!(fmt_num(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt_num(1e-7), "1e-7");
        assert_eq!(fmt_num(123456789012345.0), "1.23456789012e14");
        assert_eq!(fmt_num(0.1 + 0.2), "0.3");
        assert_eq!(fmt_num(-2.5), "-2.5");
    }
}
