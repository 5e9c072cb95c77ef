//! Minimal polynomial of the least variable and the LEX basis in shape
//! position, both read from the multiplication matrix by dense linear algebra.

use super::field::{FieldElem, PrimeField};
use super::monomial::Monomial;
use super::mulmatrix::MulMatrix;
use super::poly::{normal_form, FieldMPoly};
use super::staircase::Staircase;
use crate::error::{Error, Result};

/// Univariate polynomial over `GF(q)`, coefficients from degree 0 up, no
/// trailing zeros.
pub type UPoly = Vec<FieldElem>;

fn trim(mut a: UPoly) -> UPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// `a mod g` for monic `g`.
pub fn upoly_rem(field: &PrimeField, a: &[FieldElem], g: &[FieldElem]) -> UPoly {
    let dg = g.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if c != 0 {
            for (k, &gk) in g.iter().enumerate() {
                r[shift + k] = field.sub(r[shift + k], field.mul(c, gk));
            }
        }
        r.pop();
    }
    trim(r)
}

pub fn upoly_mulmod(field: &PrimeField, a: &[FieldElem], b: &[FieldElem], g: &[FieldElem]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = field.add(prod[i + j], field.mul(ai, bj));
        }
    }
    upoly_rem(field, &prod, g)
}

/// Monic minimal polynomial of the sequence `v, Mv, M^2 v, ...`: the first
/// Krylov vector that depends on its predecessors gives the relation.
pub fn krylov_min_poly(m: &MulMatrix, v: &[FieldElem], field: &PrimeField) -> UPoly {
    let dim = m.dim();
    // Echelon rows: (pivot, reduced vector with unit pivot, combination of Krylov vectors).
    let mut rows: Vec<(usize, Vec<FieldElem>, Vec<FieldElem>)> = Vec::new();
    let mut raw = v.to_vec();
    for k in 0..=dim {
        let mut w = raw.clone();
        let mut combo = vec![0; k + 1];
        combo[k] = 1;
        for (pivot, row, rc) in &rows {
            let c = w[*pivot];
            if c == 0 {
                continue;
            }
            for (wi, &ri) in w.iter_mut().zip(row) {
                if ri != 0 {
                    *wi = field.sub(*wi, field.mul(c, ri));
                }
            }
            for (ci, &r) in combo.iter_mut().zip(rc) {
                *ci = field.sub(*ci, field.mul(c, r));
            }
        }
        match w.iter().position(|&x| x != 0) {
            None => return combo,
            Some(p) => {
                let inv = field.inv(w[p]);
                let row = w.iter().map(|&x| field.mul(x, inv)).collect();
                let rc = combo.iter().map(|&x| field.mul(x, inv)).collect();
                rows.push((p, row, rc));
            }
        }
        raw = m.apply(field, &raw);
    }
    unreachable!("more than dim independent vectors in a space of dimension dim")
}

/// Minimal polynomial of the least variable, from the class of `1`, which is
/// the first staircase monomial.
pub fn min_poly_xn(m: &MulMatrix, field: &PrimeField) -> UPoly {
    let mut e0 = vec![0; m.dim()];
    if let Some(first) = e0.first_mut() {
        *first = 1;
    }
    krylov_min_poly(m, &e0, field)
}

/// `{x_i - g_i(t)} and g_least(t)` with `t` the least variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexParametrization {
    pub g_least: UPoly,
    /// One polynomial per non-least variable, in variable order.
    pub coordinates: Vec<UPoly>,
}

/// Solve `A X = B` for square `A` over the field; `None` if `A` is singular.
fn solve(field: &PrimeField, mut a: Vec<Vec<FieldElem>>, mut b: Vec<Vec<FieldElem>>) -> Option<Vec<Vec<FieldElem>>> {
    let n = a.len();
    for col in 0..n {
        let p = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, p);
        b.swap(col, p);
        let inv = field.inv(a[col][col]);
        for x in a[col].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for x in b[col].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..n {
            let c = a[r][col];
            if r == col || c == 0 {
                continue;
            }
            let (pa, pb) = (a[col].clone(), b[col].clone());
            for (x, &y) in a[r].iter_mut().zip(&pa) {
                *x = field.sub(*x, field.mul(c, y));
            }
            for (x, &y) in b[r].iter_mut().zip(&pb) {
                *x = field.sub(*x, field.mul(c, y));
            }
        }
    }
    Some(b)
}

/// Express every non-least variable as a polynomial in the least one by
/// solving for its normal form in the Krylov basis `1, t, ..., t^(D-1)`.
pub fn lex_parametrization(
    m: &MulMatrix,
    gb: &[FieldMPoly],
    stair: &Staircase,
    field: &PrimeField,
) -> Result<LexParametrization> {
    let dim = m.dim();
    let g_least = min_poly_xn(m, field);
    if g_least.len() != dim + 1 {
        return Err(Error::ShapePosition(format!(
            "minimal polynomial of the least variable has degree {}, quotient dimension is {dim}",
            g_least.len() - 1
        )));
    }
    let nvars = stair.nvars();
    // krylov[k] = coordinates of t^k.
    let mut krylov: Vec<Vec<FieldElem>> = Vec::with_capacity(dim);
    let mut v = vec![0; dim];
    v[0] = 1;
    for _ in 0..dim {
        let next = m.apply(field, &v);
        krylov.push(v);
        v = next;
    }
    let a: Vec<Vec<FieldElem>> = (0..dim).map(|r| (0..dim).map(|k| krylov[k][r]).collect()).collect();
    let mut b: Vec<Vec<FieldElem>> = vec![vec![0; nvars - 1]; dim];
    for i in 0..nvars - 1 {
        let x = FieldMPoly::term(field, 1, Monomial::var(nvars, i));
        for (mono, c) in normal_form(field, &x, gb).terms() {
            let Some(r) = stair.position(mono) else {
                return Err(Error::InternalInconsistency(format!("normal form term {mono} outside the staircase")));
            };
            b[r][i] = *c;
        }
    }
    let x = solve(field, a, b).ok_or_else(|| Error::ShapePosition("Krylov matrix is singular".into()))?;
    let coordinates = (0..nvars - 1).map(|i| trim((0..dim).map(|k| x[k][i]).collect())).collect();
    Ok(LexParametrization { g_least, coordinates })
}

/// Each input polynomial with `x_i -> g_i(t)` and the least variable `-> t`,
/// reduced modulo `g_least`. All zero when the parametrization is correct.
pub fn substitution_residuals(lex: &LexParametrization, system: &[FieldMPoly], field: &PrimeField) -> Vec<UPoly> {
    let g = &lex.g_least;
    let mut images: Vec<UPoly> = lex.coordinates.clone();
    images.push(upoly_rem(field, &[0, 1], g));
    let max_exp = |i: usize| system.iter().flat_map(|f| f.terms()).map(|(m, _)| m.exp(i)).max().unwrap_or(0);
    let powers: Vec<Vec<UPoly>> = images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            let mut ps = vec![upoly_rem(field, &[1], g)];
            for _ in 0..max_exp(i) {
                ps.push(upoly_mulmod(field, ps.last().unwrap(), img, g));
            }
            ps
        })
        .collect();
    system
        .iter()
        .map(|f| {
            let mut acc = vec![0; g.len() - 1];
            for (mono, c) in f.terms() {
                let mut t = vec![*c];
                for (i, ps) in powers.iter().enumerate() {
                    let e = mono.exp(i) as usize;
                    if e > 0 {
                        t = upoly_mulmod(field, &t, &ps[e], g);
                    }
                }
                for (a, &x) in acc.iter_mut().zip(&t) {
                    *a = field.add(*a, x);
                }
            }
            trim(acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::buchberger::buchberger_reduced;
    use crate::gb::mulmatrix::{build_mn, Column};

    #[test]
    fn diagonal_with_distinct_eigenvalues() {
        // Diagonal matrices as dense columns: diag(1, 2, 3) over GF(7).
        let f = PrimeField::new(7).unwrap();
        let cols = (0..3)
            .map(|j| {
                let mut c = vec![0; 3];
                c[j] = j as u32 + 1;
                Column::Dense(c)
            })
            .collect();
        let m = MulMatrix::new(3, cols);
        // (t-1)(t-2)(t-3) = t^3 - 6t^2 + 11t - 6.
        assert_eq!(krylov_min_poly(&m, &[1, 1, 1], &f), vec![f.from_i64(-6), 4, f.from_i64(-6), 1]);
        assert_eq!(krylov_min_poly(&m, &[1, 0, 0], &f), vec![f.from_i64(-1), 1]);
    }

    #[test]
    fn nilpotent_jordan_block() {
        let f = PrimeField::new(7).unwrap();
        let m = MulMatrix::new(4, vec![Column::Trivial(1), Column::Trivial(2), Column::Trivial(3), Column::Dense(vec![0; 4])]);
        assert_eq!(min_poly_xn(&m, &f), vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn one_variable_ideal() {
        let f = PrimeField::new(7).unwrap();
        let g = FieldMPoly::from_terms(&f, 1, [(Monomial::var_pow(1, 0, 2), 1), (Monomial::one(1), f.from_i64(-3))]);
        let gb = buchberger_reduced(&f, &[g.clone()]).unwrap();
        let stair = Staircase::of_basis(&gb, 1, 2).unwrap();
        let m = build_mn(&gb, &stair, &f).unwrap();
        let lex = lex_parametrization(&m, &gb, &stair, &f).unwrap();
        assert_eq!(lex.g_least, vec![4, 0, 1]);
        assert!(lex.coordinates.is_empty());
        assert!(substitution_residuals(&lex, &[g], &f).iter().all(|r| r.is_empty()));
    }

    #[test]
    fn two_points_in_the_plane() {
        // Points (1, 2) and (3, 5) over GF(101): x is the line through them in y.
        let f = PrimeField::new(101).unwrap();
        let poly = |ts: &[(&[u8], i64)]| {
            FieldMPoly::from_terms(&f, 2, ts.iter().map(|(e, c)| (Monomial::from_exponents(e).unwrap(), f.from_i64(*c))))
        };
        // (y - 2)(y - 5) and 3x - 2y + 1.
        let sys = vec![poly(&[(&[0, 2], 1), (&[0, 1], -7), (&[0, 0], 10)]), poly(&[(&[1, 0], 3), (&[0, 1], -2), (&[0, 0], 1)])];
        let gb = buchberger_reduced(&f, &sys).unwrap();
        let stair = Staircase::of_basis(&gb, 2, 2).unwrap();
        let m = build_mn(&gb, &stair, &f).unwrap();
        let lex = lex_parametrization(&m, &gb, &stair, &f).unwrap();
        assert_eq!(lex.g_least, vec![10, f.from_i64(-7), 1]);
        // x = (2y - 1)/3.
        let inv3 = f.inv(3);
        assert_eq!(lex.coordinates, vec![vec![f.mul(f.from_i64(-1), inv3), f.mul(2, inv3)]]);
        assert!(substitution_residuals(&lex, &sys, &f).iter().all(|r| r.is_empty()));
        // A polynomial not in the ideal leaves a residual.
        assert!(!substitution_residuals(&lex, &[poly(&[(&[1, 0], 1)])], &f)[0].is_empty());
    }

    #[test]
    fn not_in_shape_position() {
        // Ideal (x^2, y^2): the least variable has minimal polynomial t^2 but D = 4.
        let f = PrimeField::new(7).unwrap();
        let gb: Vec<_> = [[2u8, 0], [0, 2]]
            .iter()
            .map(|e| FieldMPoly::term(&f, 1, Monomial::from_exponents(e).unwrap()))
            .collect();
        let stair = Staircase::of_basis(&gb, 2, 4).unwrap();
        let m = MulMatrix::new(4, stair.monomials().iter().map(|b| {
            let t = b.mul_var(1);
            stair.position(&t).map_or(Column::Dense(vec![0; 4]), Column::Trivial)
        }).collect());
        assert_eq!(min_poly_xn(&m, &f).len(), 3);
        assert!(matches!(lex_parametrization(&m, &gb, &stair, &f), Err(Error::ShapePosition(_))));
    }

    #[test]
    fn polynomial_remainders() {
        let f = PrimeField::new(7).unwrap();
        // t^3 mod (t^2 + 1) = -t.
        assert_eq!(upoly_rem(&f, &[0, 0, 0, 1], &[1, 0, 1]), vec![0, 6]);
        assert_eq!(upoly_mulmod(&f, &[0, 1], &[0, 1], &[1, 0, 1]), vec![6]);
    }
}
