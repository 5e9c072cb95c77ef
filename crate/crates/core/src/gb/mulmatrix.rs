use super::field::{FieldElem, PrimeField};
use super::poly::FieldMPoly;
use super::staircase::Staircase;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Column {
    /// Single unit entry at this row.
    Trivial(usize),
    /// Full coordinate vector of length `D`.
    Dense(Vec<FieldElem>),
}

/// Matrix of multiplication by the least variable on the staircase basis,
/// columns indexed by staircase monomials in increasing DRL order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulMatrix {
    dim: usize,
    columns: Vec<Column>,
}

impl MulMatrix {
    pub fn new(dim: usize, columns: Vec<Column>) -> Self {
        assert_eq!(columns.len(), dim);
        MulMatrix { dim, columns }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn dense_count(&self) -> usize {
        self.columns.iter().filter(|c| matches!(c, Column::Dense(_))).count()
    }

    /// Number of non-zero entries.
    pub fn nnz(&self) -> usize {
        self.columns
            .iter()
            .map(|c| match c {
                Column::Trivial(_) => 1,
                Column::Dense(v) => v.iter().filter(|&&x| x != 0).count(),
            })
            .sum()
    }

    pub fn apply(&self, field: &PrimeField, v: &[FieldElem]) -> Vec<FieldElem> {
        let mut w = vec![0; self.dim];
        for (j, col) in self.columns.iter().enumerate() {
            let vj = v[j];
            if vj == 0 {
                continue;
            }
            match col {
                Column::Trivial(i) => w[*i] = field.add(w[*i], vj),
                Column::Dense(c) => {
                    for (wi, &ci) in w.iter_mut().zip(c) {
                        if ci != 0 {
                            *wi = field.add(*wi, field.mul(ci, vj));
                        }
                    }
                }
            }
        }
        w
    }
}

/// Read off the multiplication matrix of the least variable from a reduced
/// basis and its staircase.
///
/// Each column is either a pointer to another staircase monomial or a copy of
/// the negated tail of a basis element; no products or sums are formed.
pub fn build_mn(gb: &[FieldMPoly], stair: &Staircase, field: &PrimeField) -> Result<MulMatrix> {
    let last = stair.nvars() - 1;
    let dim = stair.len();
    let mut columns = Vec::with_capacity(dim);
    for b in stair.monomials() {
        let target = b.mul_var(last);
        if let Some(i) = stair.position(&target) {
            columns.push(Column::Trivial(i));
            continue;
        }
        let Some(g) = gb.iter().find(|g| g.lm() == Some(target)) else {
            return Err(Error::StructureViolation { monomial: b.to_string() });
        };
        if g.lc() != Some(1) {
            return Err(Error::InternalInconsistency(format!("basis element with leading monomial {target} is not monic")));
        }
        let mut col = vec![0; dim];
        for (m, c) in g.tail() {
            let Some(i) = stair.position(m) else {
                return Err(Error::InternalInconsistency(format!(
                    "tail monomial {m} of the element led by {target} lies outside the staircase"
                )));
            };
            col[i] = field.neg(*c);
        }
        columns.push(Column::Dense(col));
    }
    Ok(MulMatrix { dim, columns })
}
