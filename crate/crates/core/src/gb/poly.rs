use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::field::{FieldElem, PrimeField};
use super::monomial::Monomial;

/// Sparse polynomial over `GF(q)`; terms sorted by decreasing DRL order, no
/// zero coefficients. The field is passed to every arithmetic call.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMPoly {
    nvars: usize,
    terms: Vec<(Monomial, FieldElem)>,
}

impl FieldMPoly {
    pub fn zero(nvars: usize) -> Self {
        FieldMPoly { nvars, terms: Vec::new() }
    }

    pub fn term(field: &PrimeField, c: FieldElem, m: Monomial) -> Self {
        let c = field.reduce(c as u64);
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        FieldMPoly { nvars: m.nvars(), terms }
    }

    /// Build from arbitrary terms; combines duplicates and drops zeros.
    pub fn from_terms(field: &PrimeField, nvars: usize, terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, field.reduce(c as u64));
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        FieldMPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn lc(&self) -> Option<FieldElem> {
        self.terms.first().map(|t| t.1)
    }

    /// Everything but the leading term.
    pub fn tail(&self) -> &[(Monomial, FieldElem)] {
        self.terms.get(1..).unwrap_or(&[])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn monic(&self, field: &PrimeField) -> Self {
        match self.lc() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(field, field.inv(c)),
        }
    }

    pub fn scale(&self, field: &PrimeField, c: FieldElem) -> Self {
        if c == 0 {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|&(m, a)| (m, field.mul(a, c))).collect();
        FieldMPoly { nvars: self.nvars, terms }
    }

    /// `self - c * m * g`, merging in one pass.
    pub fn sub_mul(&self, field: &PrimeField, c: FieldElem, m: &Monomial, g: &FieldMPoly) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|&(gm, gc)| (gm.mul(m), field.mul(gc, c))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(*a.next().unwrap()),
                (None, Some(_)) => {
                    let (bm, bc) = b.next().unwrap();
                    out.push((bm, field.neg(bc)));
                }
                (Some(&&(am, ac)), Some(&(bm, bc))) => match am.cmp(&bm) {
                    Ordering::Greater => {
                        out.push((am, ac));
                        a.next();
                    }
                    Ordering::Less => {
                        out.push((bm, field.neg(bc)));
                        b.next();
                    }
                    Ordering::Equal => {
                        let s = field.sub(ac, bc);
                        if s != 0 {
                            out.push((am, s));
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
        FieldMPoly { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, field: &PrimeField, other: &FieldMPoly) -> Self {
        self.sub_mul(field, field.neg(1), &Monomial::one(self.nvars), other)
    }

    pub fn sub(&self, field: &PrimeField, other: &FieldMPoly) -> Self {
        self.sub_mul(field, 1, &Monomial::one(self.nvars), other)
    }

    pub fn mul(&self, field: &PrimeField, other: &FieldMPoly) -> Self {
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::with_capacity(self.len() * other.len());
        for &(am, ac) in &self.terms {
            for &(bm, bc) in &other.terms {
                let e = acc.entry(am.mul(&bm)).or_insert(0);
                *e = field.add(*e, field.mul(ac, bc));
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        FieldMPoly { nvars: self.nvars, terms }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, field: &PrimeField, i: usize) -> Self {
        let terms = self.terms.iter().filter(|t| t.0.exp(i) > 0).map(|&(m, c)| {
            let e = m.exp(i);
            let mut ex = m.exponents().to_vec();
            ex[i] -= 1;
            (Monomial::from_exponents(&ex).expect("same arity"), field.mul(c, e as u32))
        });
        Self::from_terms(field, self.nvars, terms)
    }

    /// View in `nvars` variables, appending unused ones. The order of the
    /// existing terms is unchanged because new variables carry exponent zero.
    pub fn embed(&self, nvars: usize) -> Self {
        FieldMPoly { nvars, terms: self.terms.iter().map(|&(m, c)| (m.embed(nvars), c)).collect() }
    }
}

/// Fully reduce `f` by `basis`: every term, not just the leading one.
pub fn normal_form(field: &PrimeField, f: &FieldMPoly, basis: &[FieldMPoly]) -> FieldMPoly {
    let mut rest = f.clone();
    let mut done: Vec<(Monomial, FieldElem)> = Vec::new();
    while let Some((m, c)) = rest.terms.first().copied() {
        let reducer = basis.iter().find(|g| g.lm().is_some_and(|lm| lm.divides(&m)));
        match reducer {
            Some(g) => {
                let q = g.lm().unwrap().quotient_of(&m).unwrap();
                let coef = field.mul(c, field.inv(g.lc().unwrap()));
                rest = rest.sub_mul(field, coef, &q, g);
            }
            None => {
                done.push((m, c));
                rest.terms.remove(0);
            }
        }
    }
    FieldMPoly { nvars: f.nvars, terms: done }
}

impl fmt::Display for FieldMPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{c}")?;
            } else if *c == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldMPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
