use std::collections::{BTreeSet, HashSet};

use super::field::PrimeField;
use super::monomial::Monomial;
use super::poly::{normal_form, FieldMPoly};
use crate::error::{invalid, Result};

fn s_polynomial(field: &PrimeField, f: &FieldMPoly, g: &FieldMPoly, lcm: &Monomial) -> FieldMPoly {
    // Both inputs are monic.
    let uf = f.lm().unwrap().quotient_of(lcm).unwrap();
    let ug = g.lm().unwrap().quotient_of(lcm).unwrap();
    FieldMPoly::zero(f.nvars()).sub_mul(field, field.neg(1), &uf, f).sub_mul(field, 1, &ug, g)
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

/// Reduced minimal DRL Gröbner basis of the ideal generated by `system`.
///
/// Buchberger's algorithm with the product and chain criteria and the
/// normal selection strategy (smallest lcm first), followed by
/// inter-reduction. Output is monic and sorted by increasing leading monomial.
pub fn buchberger_reduced(field: &PrimeField, system: &[FieldMPoly]) -> Result<Vec<FieldMPoly>> {
    let Some(first) = system.first() else {
        return invalid("empty polynomial system");
    };
    let nvars = first.nvars();
    if system.iter().any(|f| f.nvars() != nvars) {
        return invalid("polynomials in the system have different variable counts");
    }

    let mut basis: Vec<FieldMPoly> = Vec::new();
    let mut queue: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    fn insert(
        h: FieldMPoly,
        basis: &mut Vec<FieldMPoly>,
        queue: &mut BTreeSet<(Monomial, usize, usize)>,
        pending: &mut HashSet<(usize, usize)>,
    ) {
        let k = basis.len();
        let lm = h.lm().unwrap();
        for (i, g) in basis.iter().enumerate() {
            queue.insert((g.lm().unwrap().lcm(&lm), i, k));
            pending.insert((i, k));
        }
        basis.push(h);
    }

    for f in system {
        let r = normal_form(field, f, &basis);
        if !r.is_zero() {
            insert(r.monic(field), &mut basis, &mut queue, &mut pending);
        }
    }

    while let Some((lcm, i, j)) = queue.pop_first() {
        pending.remove(&(i, j));
        let (li, lj) = (basis[i].lm().unwrap(), basis[j].lm().unwrap());
        if li.coprime(&lj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().unwrap().divides(&lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(field, &basis[i], &basis[j], &lcm);
        let r = normal_form(field, &s, &basis);
        if !r.is_zero() {
            insert(r.monic(field), &mut basis, &mut queue, &mut pending);
        }
    }

    Ok(inter_reduce(field, basis))
}

/// Minimalize, then fully reduce each element by the others.
pub fn inter_reduce(field: &PrimeField, basis: Vec<FieldMPoly>) -> Vec<FieldMPoly> {
    let mut minimal: Vec<FieldMPoly> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by_key(|g| g.lm());
    for g in sorted {
        let lm = g.lm().unwrap();
        if minimal.iter().all(|h| !h.lm().unwrap().divides(&lm)) {
            minimal.push(g);
        }
    }
    let mut reduced: Vec<FieldMPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<FieldMPoly> =
                minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            normal_form(field, &minimal[i], &others).monic(field)
        })
        .collect();
    reduced.sort_by_key(|g| g.lm());
    reduced
}

/// `true` iff every S-polynomial of `basis` reduces to zero.
pub fn is_groebner_basis(field: &PrimeField, basis: &[FieldMPoly]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let f = basis[i].monic(field);
            let g = basis[j].monic(field);
            let lcm = f.lm().unwrap().lcm(&g.lm().unwrap());
            if !normal_form(field, &s_polynomial(field, &f, &g, &lcm), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// `true` iff the basis is monic, has pairwise non-divisible leading
/// monomials and no term of any element is divisible by another's lead.
pub fn is_reduced(basis: &[FieldMPoly]) -> bool {
    basis.iter().enumerate().all(|(i, g)| {
        g.lc() == Some(1)
            && basis.iter().enumerate().all(|(j, h)| {
                i == j || g.terms().iter().all(|(m, _)| !h.lm().unwrap().divides(m))
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(field: &PrimeField, terms: &[(&[u8], i64)]) -> FieldMPoly {
        let nvars = terms[0].0.len();
        FieldMPoly::from_terms(
            field,
            nvars,
            terms.iter().map(|(e, c)| (Monomial::from_exponents(e).unwrap(), field.from_i64(*c))),
        )
    }

    #[test]
    fn already_a_basis() {
        let f = PrimeField::new(101).unwrap();
        let sys = vec![poly(&f, &[(&[2, 0], 1)]), poly(&f, &[(&[1, 1], 1)])];
        assert_eq!(buchberger_reduced(&f, &sys).unwrap(), vec![poly(&f, &[(&[1, 1], 1)]), poly(&f, &[(&[2, 0], 1)])]);
        let sys = vec![poly(&f, &[(&[1, 0], 1), (&[0, 0], -1)]), poly(&f, &[(&[0, 1], 1), (&[0, 0], -2)])];
        let mut expected = sys.clone();
        expected.sort_by_key(|g| g.lm());
        assert_eq!(buchberger_reduced(&f, &sys).unwrap(), expected);
    }

    #[test]
    fn circle_and_line() {
        // x^2 + y^2 - 1, x - y over GF(101): reduced basis {x - y, y^2 - 51}.
        let f = PrimeField::new(101).unwrap();
        let sys = vec![
            poly(&f, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -1)]),
            poly(&f, &[(&[1, 0], 1), (&[0, 1], -1)]),
        ];
        let gb = buchberger_reduced(&f, &sys).unwrap();
        assert_eq!(gb, vec![poly(&f, &[(&[1, 0], 1), (&[0, 1], -1)]), poly(&f, &[(&[0, 2], 1), (&[0, 0], -51)])]);
        assert!(is_reduced(&gb) && is_groebner_basis(&f, &gb));
    }

    #[test]
    fn rejects_empty_system() {
        assert!(buchberger_reduced(&PrimeField::default(), &[]).is_err());
    }

    fn arb_system() -> impl Strategy<Value = Vec<FieldMPoly>> {
        let term = (proptest::collection::vec(0u8..3, 3), 1i64..31);
        proptest::collection::vec(proptest::collection::vec(term, 1..4), 1..4).prop_map(|ps| {
            let f = PrimeField::new(31).unwrap();
            ps.into_iter()
                .map(|ts| FieldMPoly::from_terms(&f, 3, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e).unwrap(), c as u32))))
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn output_is_reduced_basis_of_same_ideal(sys in arb_system()) {
            let f = PrimeField::new(31).unwrap();
            prop_assume!(sys.iter().any(|p| !p.is_zero()));
            let gb = buchberger_reduced(&f, &sys).unwrap();
            prop_assert!(is_reduced(&gb));
            prop_assert!(is_groebner_basis(&f, &gb));
            for p in &sys {
                prop_assert!(normal_form(&f, p, &gb).is_zero());
            }
            // Canonical: recomputing from the output gives the output.
            prop_assert_eq!(buchberger_reduced(&f, &gb).unwrap(), gb);
        }
    }
}
