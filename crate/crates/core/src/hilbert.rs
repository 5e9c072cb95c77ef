//! Hilbert series of generic determinantal ideals and the truncated
//! quotient series that describe the DRL staircase slice by slice.
//!
//! The series `H` is built two independent ways: from the binomial-sum
//! closed form, and from the determinant of the binomial product matrix.
//! Agreement of the two is the module's main self-check.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::series::{binomial, binomial_product_matrix, poly_det, IntPoly};

/// Shape of a determinantal system: `p` polynomials of degree `d` in `n`
/// variables, plus the maximal minors of a `p x (n-1)` matrix whose entries
/// have degree `d - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SystemParams {
    pub d: u32,
    pub p: u32,
    pub n: u32,
}

impl SystemParams {
    pub fn new(d: u32, p: u32, n: u32) -> Result<Self> {
        if d < 2 {
            return invalid(format!("degree d must be at least 2, got {d}"));
        }
        if p < 1 {
            return invalid(format!("p must be at least 1, got {p}"));
        }
        if n <= p {
            return invalid(format!("need n > p, got n = {n}, p = {p}"));
        }
        Ok(SystemParams { d, p, n })
    }

    /// Degree of `H`: `(p-1)(d-1) + p(d-1) + (n-p)(d-2)`.
    pub fn delta(&self) -> usize {
        let (d, p, n) = (self.d as usize, self.p as usize, self.n as usize);
        (p - 1) * (d - 1) + p * (d - 1) + (n - p) * (d - 2)
    }

    /// `D = d^p (d-1)^(n-p) C(n-1, p-1)`.
    pub fn ideal_degree(&self) -> BigInt {
        BigInt::from(self.d).pow(self.p)
            * BigInt::from(self.d - 1).pow(self.n - self.p)
            * binomial(self.n as i64 - 1, self.p as i64 - 1)
    }

    /// Number of maximal minors, `C(n-1, p)`.
    pub fn minor_count(&self) -> BigInt {
        binomial(self.n as i64 - 1, self.p as i64)
    }
}

impl std::fmt::Display for SystemParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.d, self.p, self.n)
    }
}

/// `sum_{k=0}^{p-1} C(n-p-1+k, k) t^(k(d-1))`
fn binomial_sum_factor(params: &SystemParams) -> IntPoly {
    let (p, n) = (params.p as i64, params.n as i64);
    let sum = IntPoly::from_coeffs((0..p).map(|k| binomial(n - p - 1 + k, k)).collect());
    sum.inflate(params.d as usize - 1)
}

/// Multiply by `(1-t^d)^p (1-t^(d-1))^(n-p) / (1-t)^n`, written as a product
/// of geometric sums so that everything stays in Z[t].
fn apply_geometric_factors(base: IntPoly, params: &SystemParams) -> IntPoly {
    let d = params.d as usize;
    let mut h = base;
    for _ in 0..params.p {
        h = h.mul_geo(d);
    }
    if d > 2 {
        for _ in 0..params.n - params.p {
            h = h.mul_geo(d - 1);
        }
    }
    h
}

/// `H` from the binomial-sum closed form.
pub fn hilbert_binomial(params: &SystemParams) -> IntPoly {
    apply_geometric_factors(binomial_sum_factor(params), params)
}

/// `H` from `det(P(t^(d-1))) / t^((d-1) C(p-1, 2))` times the geometric factors.
pub fn hilbert_determinant(params: &SystemParams) -> Result<IntPoly> {
    let (d, p, n) = (params.d as usize, params.p as usize, params.n as i64);
    let m = p - 1;
    let det = poly_det(&binomial_product_matrix(m, p as i64, n - 1, d - 1))?;
    let shift = (d - 1) * (m * m.saturating_sub(1) / 2);
    let reduced = det.unshift(shift).ok_or_else(|| {
        Error::InternalInconsistency(format!(
            "det(P) for {params} is not divisible by t^{shift}: {det:?}"
        ))
    })?;
    Ok(apply_geometric_factors(reduced, params))
}

/// Cut a series at its first non-positive coefficient.
pub fn truncate_plus(s: &IntPoly) -> IntPoly {
    let cut = s
        .coeffs()
        .iter()
        .position(|c| !c.is_positive())
        .unwrap_or(s.coeffs().len());
    IntPoly::from_coeffs(s.coeffs()[..cut].to_vec())
}

/// Least peak index when `f` is unimodal, `None` otherwise.
///
/// A polynomial with non-negative coefficients is unimodal when its
/// coefficients rise (weakly) to index `N` and fall (weakly) afterwards.
pub fn is_unimodal(f: &IntPoly) -> Option<usize> {
    if !f.all_non_negative() {
        return None;
    }
    let Some((peak, _)) = f.max_coeff() else {
        return Some(0);
    };
    let c = f.coeffs();
    let rising = c[..=peak].windows(2).all(|w| w[0] <= w[1]);
    let falling = c[peak..].windows(2).all(|w| w[0] >= w[1]);
    (rising && falling).then_some(peak)
}

/// The Hilbert series of one parameter set together with its summary numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertProfile {
    pub params: SystemParams,
    pub h: IntPoly,
    /// Degree of `H`.
    pub delta: usize,
    /// Least degree at which `H` attains its largest coefficient.
    pub sigma: usize,
    /// Largest coefficient of `H`.
    pub dmax: BigInt,
}

impl HilbertProfile {
    pub fn new(params: SystemParams) -> Self {
        let h = hilbert_binomial(&params);
        let (sigma, dmax) = h
            .max_coeff()
            .map(|(i, c)| (i, c.clone()))
            .expect("Hilbert series is never zero");
        let delta = h.degree().expect("Hilbert series is never zero");
        HilbertProfile { params, h, delta, sigma, dmax }
    }

    /// `HQ_e = [(1 - t^e) H]_+`.
    pub fn hq(&self, e: usize) -> Result<IntPoly> {
        if e < 1 {
            return invalid("quotient series needs e >= 1");
        }
        let shifted = self.h.shift(e);
        Ok(truncate_plus(&(&self.h - &shifted)))
    }

    /// `H_e = (HQ_{e+1} - HQ_e) / t^e` for `e >= 1`; `H_0` is reported as `HQ_1`.
    pub fn section(&self, e: usize) -> Result<IntPoly> {
        if e == 0 {
            return self.hq(1);
        }
        let diff = &self.hq(e + 1)? - &self.hq(e)?;
        diff.unshift(e).ok_or_else(|| {
            Error::InternalInconsistency(format!(
                "HQ_{} - HQ_{e} = {diff} is not divisible by t^{e} for {}",
                e + 1,
                self.params
            ))
        })
    }

    /// `H_e - H_{e+1}`, which must be zero or a single positive term.
    pub fn section_drop(&self, e: usize) -> Result<IntPoly> {
        if e < 1 {
            return invalid("section_drop needs e >= 1");
        }
        let drop = &self.section(e)? - &self.section(e + 1)?;
        if drop.term_count() > 1 || !drop.all_non_negative() {
            return Err(Error::InternalInconsistency(format!(
                "section drop H_{e} - H_{} = {drop} is not zero or a positive monomial for {}",
                e + 1,
                self.params
            )));
        }
        Ok(drop)
    }

    /// Ideal degree read off the series, `H(1)`.
    pub fn degree_at_one(&self) -> BigInt {
        self.h.eval_at_one()
    }

    pub fn peak(&self) -> Option<usize> {
        is_unimodal(&self.h)
    }
}

pub fn hq(params: &SystemParams, e: usize) -> Result<IntPoly> {
    HilbertProfile::new(*params).hq(e)
}

pub fn section(params: &SystemParams, e: usize) -> Result<IntPoly> {
    HilbertProfile::new(*params).section(e)
}

pub fn section_drop(params: &SystemParams, e: usize) -> Result<IntPoly> {
    HilbertProfile::new(*params).section_drop(e)
}

/// Count of the drop coefficient (zero for a zero drop).
pub fn drop_count(drop: &IntPoly) -> BigInt {
    drop.coeffs().iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(BigInt::zero)
}

/// True when every property that the staircase structure argument relies on
/// holds for these parameters. Returns the first failing property otherwise.
pub fn check_structural_properties(params: &SystemParams) -> std::result::Result<(), String> {
    let profile = HilbertProfile::new(*params);
    if profile.peak().is_none() {
        return Err(format!("H is not unimodal for {params}: {:?}", profile.h));
    }
    let last = profile.delta + 1;
    let hqs: Vec<IntPoly> = (1..=last + 2)
        .map(|e| profile.hq(e))
        .collect::<Result<_>>()
        .map_err(|e| e.to_string())?;
    for e in 1..=last {
        let (a, b) = (hqs[e - 1].degree(), hqs[e].degree());
        match (a, b) {
            (Some(a), Some(b)) if b == a || b == a + 1 => {}
            _ => return Err(format!("deg HQ_{} - deg HQ_{e} not in {{0,1}} for {params}", e + 1)),
        }
        profile.section_drop(e).map_err(|e| e.to_string())?;
    }
    if hqs[0].eval_at_one() != profile.dmax {
        return Err(format!("HQ_1(1) != max coefficient of H for {params}"));
    }
    if hqs[last] != profile.h {
        return Err(format!("HQ_e does not stabilise to H for {params}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn params(d: u32, pp: u32, n: u32) -> SystemParams {
        SystemParams::new(d, pp, n).unwrap()
    }

    /// Product of the explicit factors, expanded independently of the
    /// sliding-window geometric multiplication.
    fn expand_factors(factors: &[&[i64]]) -> IntPoly {
        factors.iter().fold(IntPoly::one(), |acc, f| &acc * &p(f))
    }

    #[test]
    fn param_validation() {
        assert!(SystemParams::new(1, 1, 2).is_err());
        assert!(SystemParams::new(2, 0, 2).is_err());
        assert!(SystemParams::new(2, 2, 2).is_err());
        assert!(SystemParams::new(2, 1, 2).is_ok());
        assert_eq!(params(8, 4, 20).delta(), 145);
        assert_eq!(params(2, 4, 9).ideal_degree(), BigInt::from(896));
    }

    #[test]
    fn binomial_route_examples() {
        let h = hilbert_binomial(&params(3, 2, 3));
        assert_eq!(h, p(&[1, 3, 6, 8, 8, 6, 3, 1]));
        assert_eq!(h, expand_factors(&[&[1, 0, 1], &[1, 1, 1], &[1, 1, 1], &[1, 1]]));
        assert_eq!(hilbert_binomial(&params(2, 1, 2)), p(&[1, 1]));
        let h = hilbert_binomial(&params(4, 2, 3));
        assert_eq!(h, p(&[1, 3, 6, 10, 13, 15, 15, 13, 10, 6, 3, 1]));
        assert_eq!(h, expand_factors(&[&[1, 0, 0, 1], &[1, 1, 1, 1], &[1, 1, 1, 1], &[1, 1, 1]]));
        assert_eq!(h.eval_at_one(), BigInt::from(96));
    }

    #[test]
    fn determinant_route_examples() {
        for n in 2..8 {
            let pr = params(3, 1, n);
            let mut expect = geo_pow(3, 1);
            expect = &expect * &geo_pow(2, n - 1);
            assert_eq!(hilbert_determinant(&pr).unwrap(), expect);
        }
        assert_eq!(hilbert_determinant(&params(3, 2, 3)).unwrap(), p(&[1, 3, 6, 8, 8, 6, 3, 1]));
        let h = hilbert_determinant(&params(2, 4, 9)).unwrap();
        assert_eq!(h, p(&[1, 9, 41, 129, 251, 275, 155, 35]));
        assert_eq!(h.eval_at_one(), BigInt::from(896));
        // (1 + 5t + 15t^2 + 35t^3)(1 + t)^4 expanded by hand-independent product.
        assert_eq!(h, expand_factors(&[&[1, 5, 15, 35], &[1, 1], &[1, 1], &[1, 1], &[1, 1]]));
    }

    fn geo_pow(r: i64, e: u32) -> IntPoly {
        crate::series::geo(r).unwrap().pow(e)
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(truncate_plus(&p(&[1, 2, 3, -1, 1])), p(&[1, 2, 3]));
        let diff = p(&[1, 2, 3, 2, 0, -2, -3, -2, -1]);
        assert_eq!(&p(&[1, 3, 6, 8, 8, 6, 3, 1]) * &p(&[1, -1]), diff);
        assert_eq!(truncate_plus(&diff), p(&[1, 2, 3, 2]));
        assert_eq!(truncate_plus(&p(&[1, 1])), p(&[1, 1]));
        assert_eq!(truncate_plus(&p(&[0, 1])), IntPoly::zero());
    }

    #[test]
    fn quotient_series_examples() {
        let pr = params(3, 2, 3);
        assert_eq!(hq(&pr, 1).unwrap(), p(&[1, 2, 3, 2]));
        assert_eq!(hq(&pr, 1).unwrap().eval_at_one(), BigInt::from(8));
        assert_eq!(hq(&pr, 2).unwrap(), p(&[1, 3, 5, 5, 2]));
        assert_eq!(hq(&pr, 3).unwrap(), p(&[1, 3, 6, 7, 5]));
        assert_eq!(hq(&pr, 4).unwrap(), p(&[1, 3, 6, 8, 7, 3]));
        assert_eq!(hq(&pr, 5).unwrap(), p(&[1, 3, 6, 8, 8, 5]));
        assert!(hq(&pr, 0).is_err());
        for e in 8..12 {
            assert_eq!(hq(&pr, e).unwrap(), hilbert_binomial(&pr));
        }
    }

    #[test]
    fn section_examples() {
        let pr = params(3, 2, 3);
        assert_eq!(section(&pr, 0).unwrap(), p(&[1, 2, 3, 2]));
        assert_eq!(section(&pr, 1).unwrap(), p(&[1, 2, 3, 2]));
        assert_eq!(section(&pr, 2).unwrap(), p(&[1, 2, 3]));
        assert_eq!(section(&pr, 3).unwrap(), p(&[1, 2, 3]));
        assert_eq!(section(&pr, 4).unwrap(), p(&[1, 2]));
    }

    #[test]
    fn section_drop_examples() {
        let pr = params(3, 2, 3);
        assert_eq!(section_drop(&pr, 1).unwrap(), p(&[0, 0, 0, 2]));
        assert_eq!(section_drop(&pr, 2).unwrap(), IntPoly::zero());
        assert_eq!(section_drop(&pr, 3).unwrap(), p(&[0, 0, 3]));
        assert_eq!(drop_count(&section_drop(&pr, 3).unwrap()), BigInt::from(3));
        assert!(section_drop(&pr, 0).is_err());
    }

    #[test]
    fn unimodality_examples() {
        assert_eq!(is_unimodal(&p(&[1, 3, 6, 8, 8, 6, 3, 1])), Some(3));
        assert_eq!(is_unimodal(&p(&[9, 6, 7, 2, 1])), None);
        assert_eq!(&p(&[3, 1, 1]) * &p(&[3, 1, 1]), p(&[9, 6, 7, 2, 1]));
        assert_eq!(is_unimodal(&p(&[3, 1, 1])), Some(0));
        assert_eq!(is_unimodal(&p(&[1])), Some(0));
        assert_eq!(is_unimodal(&p(&[1, -1, 1])), None);
        assert_eq!(is_unimodal(&p(&[1, 0, 1])), None);
    }

    #[test]
    fn routes_agree_on_grid() {
        for d in 2..=8 {
            for pp in 1..=5 {
                for n in pp + 1..=14 {
                    let pr = params(d, pp, n);
                    let h = hilbert_binomial(&pr);
                    assert_eq!(h, hilbert_determinant(&pr).unwrap(), "{pr}");
                    assert_eq!(h.degree(), Some(pr.delta()), "{pr}");
                    assert_eq!(h.eval_at_one(), pr.ideal_degree(), "{pr}");
                }
            }
        }
    }

    #[test]
    fn profile_summary() {
        let prof = HilbertProfile::new(params(3, 2, 3));
        assert_eq!((prof.delta, prof.sigma), (7, 3));
        assert_eq!(prof.dmax, BigInt::from(8));
        assert_eq!(prof.hq(1).unwrap().degree(), Some(prof.sigma));
    }

    /// Coefficients of a random unimodal polynomial: a rising run then a falling run.
    fn unimodal_poly() -> impl Strategy<Value = IntPoly> {
        (prop::collection::vec(0i64..=100, 1..=31), 0usize..=30).prop_map(|(mut c, split)| {
            let split = split.min(c.len());
            c[..split].sort();
            c[split..].sort_by(|a, b| b.cmp(a));
            IntPoly::from_i64s(&c)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn geometric_factor_preserves_unimodality(g in unimodal_poly(), r in 2usize..=8) {
            prop_assume!(is_unimodal(&g).is_some());
            prop_assert!(is_unimodal(&g.mul_geo(r)).is_some());
        }

        #[test]
        fn products_of_geometric_factors_stay_strong(
            g in unimodal_poly(),
            rs in prop::collection::vec(2usize..=8, 1..=4),
        ) {
            prop_assume!(is_unimodal(&g).is_some());
            let f = rs.iter().fold(IntPoly::one(), |acc, &r| acc.mul_geo(r));
            prop_assert!(is_unimodal(&f).is_some());
            prop_assert!(is_unimodal(&(&f * &g)).is_some());
        }
    }
}
