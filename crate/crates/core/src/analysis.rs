//! A KL table bundled with its structure constants, `a`-function data and
//! cell preorders.

use std::sync::Arc;

use crate::cells::CellData;
use crate::conjectures::Invariants;
use crate::coxeter::CoxeterGroup;
use crate::error::Result;
use crate::hecke::HeckeAlgebra;
use crate::kl::KlTable;
use crate::laurent::{Exponent, GammaExp};
use crate::structure::{AFunctionData, StructTable};

pub struct Analysis<E: Exponent> {
    pub table: KlTable<E>,
    pub st: StructTable<E>,
    pub af: AFunctionData<E>,
    pub cells: CellData,
}

impl<E: Exponent> Analysis<E> {
    pub fn compute(table: KlTable<E>) -> Result<Self> {
        let st = StructTable::build(&table);
        let af = AFunctionData::compute(&table, &st)?;
        let cells = CellData::compute(&table);
        Ok(Analysis { table, st, af, cells })
    }

    pub fn invariants(&self) -> Invariants<'_, E> {
        Invariants::new(&self.table, &self.st, &self.af, &self.cells)
    }
}

/// The KL table of `W_n` with the asymptotic weights.
pub fn asymptotic_table(n: usize) -> Result<KlTable<GammaExp>> {
    KlTable::build(Arc::new(HeckeAlgebra::asymptotic(Arc::new(CoxeterGroup::type_b(n)))))
}

pub fn asymptotic(n: usize) -> Result<Analysis<GammaExp>> {
    Analysis::compute(asymptotic_table(n)?)
}
