use std::sync::Arc;

use crate::belief::SetPotential;
use crate::domain::{Domain, VariableCatalog};
use crate::error::{Error, Result};
use crate::semiring::Semiring;
use crate::valuation::Valuation;

/// The operations local computation needs from an algebra of pieces of information.
pub trait LocalAlgebra {
    type Value: Clone;

    fn label(&self, v: &Self::Value) -> Domain;
    fn unit(&self, d: &Domain) -> Result<Self::Value>;
    fn combine(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    /// Marginal onto `t ⊆ label(v)`.
    fn project(&self, v: &Self::Value, t: &Domain) -> Result<Self::Value>;
    /// Transport onto an arbitrary domain; only called when [`Self::supports_transport`].
    fn transport(&self, v: &Self::Value, t: &Domain) -> Result<Self::Value>;
    fn supports_transport(&self) -> bool;
    /// Whether `φ · t_y(φ) = φ` holds (idempotent addition and multiplication).
    fn idempotent(&self) -> bool;
    fn approx_eq(&self, a: &Self::Value, b: &Self::Value) -> bool;
    fn name(&self) -> String;
}

/// Semiring valuations over one catalog.
#[derive(Debug, Clone)]
pub struct ValuationAlgebra {
    pub semiring: Semiring,
    pub catalog: Arc<VariableCatalog>,
}

impl ValuationAlgebra {
    pub fn new(semiring: Semiring, catalog: Arc<VariableCatalog>) -> Self {
        ValuationAlgebra { semiring, catalog }
    }
}

impl LocalAlgebra for ValuationAlgebra {
    type Value = Valuation;

    fn label(&self, v: &Valuation) -> Domain {
        v.domain().clone()
    }

    fn unit(&self, d: &Domain) -> Result<Valuation> {
        Valuation::unit(self.semiring, self.catalog.clone(), d.clone())
    }

    fn combine(&self, a: &Valuation, b: &Valuation) -> Result<Valuation> {
        a.combine(b)
    }

    fn project(&self, v: &Valuation, t: &Domain) -> Result<Valuation> {
        v.project(t)
    }

    fn transport(&self, v: &Valuation, t: &Domain) -> Result<Valuation> {
        v.transport(t)
    }

    fn supports_transport(&self) -> bool {
        self.semiring.flags().idempotent_add
    }

    fn idempotent(&self) -> bool {
        let f = self.semiring.flags();
        f.idempotent_add && f.idempotent_mul
    }

    fn approx_eq(&self, a: &Valuation, b: &Valuation) -> bool {
        a.approx_eq(b)
    }

    fn name(&self) -> String {
        self.semiring.id()
    }
}

/// Set potentials under unnormalized combination and set transport.
#[derive(Debug, Clone)]
pub struct PotentialAlgebra {
    pub catalog: Arc<VariableCatalog>,
}

impl PotentialAlgebra {
    pub fn new(catalog: Arc<VariableCatalog>) -> Self {
        PotentialAlgebra { catalog }
    }
}

impl LocalAlgebra for PotentialAlgebra {
    type Value = SetPotential;

    fn label(&self, v: &SetPotential) -> Domain {
        v.domain().clone()
    }

    fn unit(&self, d: &Domain) -> Result<SetPotential> {
        SetPotential::vacuous(self.catalog.clone(), d.clone())
    }

    fn combine(&self, a: &SetPotential, b: &SetPotential) -> Result<SetPotential> {
        a.combine(b)
    }

    fn project(&self, v: &SetPotential, t: &Domain) -> Result<SetPotential> {
        if !t.is_subset(v.domain()) {
            return Err(Error::NotSubset {
                sub: self.catalog.display(t),
                sup: self.catalog.display(v.domain()),
            });
        }
        v.transport(t)
    }

    fn transport(&self, v: &SetPotential, t: &Domain) -> Result<SetPotential> {
        v.transport(t)
    }

    fn supports_transport(&self) -> bool {
        true
    }

    fn idempotent(&self) -> bool {
        false
    }

    fn approx_eq(&self, a: &SetPotential, b: &SetPotential) -> bool {
        a.approx_eq(b)
    }

    fn name(&self) -> String {
        "set-potential".into()
    }
}
