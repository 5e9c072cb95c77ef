use std::collections::{HashMap, HashSet};

use super::monomial::Monomial;
use super::poly::FieldMPoly;
use crate::error::{Error, Result};

/// Monomials outside the leading-monomial ideal, in increasing DRL order.
#[derive(Clone, Debug)]
pub struct Staircase {
    nvars: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Staircase {
    /// Enumerate degree by degree; fails once more than `cap` monomials are found.
    pub fn from_leads(leads: &[Monomial], nvars: usize, cap: usize) -> Result<Self> {
        let outside = |m: &Monomial| leads.iter().all(|l| !l.divides(m));
        let mut monomials = Vec::new();
        let mut layer: Vec<Monomial> = Some(Monomial::one(nvars)).into_iter().filter(outside).collect();
        while !layer.is_empty() {
            layer.sort();
            monomials.extend_from_slice(&layer);
            if monomials.len() > cap {
                return Err(Error::Dimension { expected: cap / 10, cap });
            }
            let mut next: HashSet<Monomial> = HashSet::new();
            for m in &layer {
                for i in 0..nvars {
                    let c = m.mul_var(i);
                    if outside(&c) {
                        next.insert(c);
                    }
                }
            }
            layer = next.into_iter().collect();
        }
        let index = monomials.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(Staircase { nvars, monomials, index })
    }

    /// Staircase of a Gröbner basis; `expected` sets the guard at ten times that size.
    pub fn of_basis(gb: &[FieldMPoly], nvars: usize, expected: usize) -> Result<Self> {
        let leads: Vec<Monomial> = gb.iter().filter_map(|g| g.lm()).collect();
        let cap = expected.max(1).saturating_mul(10);
        Self::from_leads(&leads, nvars, cap).map_err(|_| Error::Dimension { expected, cap })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.index.contains_key(m)
    }

    /// Count of staircase monomials in each total degree.
    pub fn hilbert_function(&self) -> Vec<u64> {
        degree_counts(self.monomials.iter())
    }

    /// `E^e`: monomials with least-variable degree `e`, that variable removed.
    pub fn sections(&self) -> Vec<Vec<Monomial>> {
        let mut out: Vec<Vec<Monomial>> = Vec::new();
        for m in &self.monomials {
            let e = m.last_exp() as usize;
            if out.len() <= e {
                out.resize(e + 1, Vec::new());
            }
            out[e].push(m.strip_last());
        }
        out
    }

    /// Hilbert function of each section.
    pub fn section_functions(&self) -> Vec<Vec<u64>> {
        self.sections().iter().map(|s| degree_counts(s.iter())).collect()
    }
}

fn degree_counts<'a>(ms: impl Iterator<Item = &'a Monomial>) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for m in ms {
        let k = m.degree() as usize;
        if out.len() <= k {
            out.resize(k + 1, 0);
        }
        out[k] += 1;
    }
    out
}

/// Hilbert function of the staircase after adding the least variable to the
/// power `e` to the leading monomials of `gb`.
pub fn quotient_function(gb: &[FieldMPoly], nvars: usize, e: u8, cap: usize) -> Result<Vec<u64>> {
    let power = Monomial::var_pow(nvars, nvars - 1, e);
    let mut leads: Vec<Monomial> = gb.iter().filter_map(|g| g.lm()).filter(|m| !power.divides(m)).collect();
    leads.push(power);
    Ok(Staircase::from_leads(&leads, nvars, cap)?.hilbert_function())
}
