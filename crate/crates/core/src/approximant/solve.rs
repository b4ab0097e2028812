use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::basis::{enumerate_basis, BasisSpec};
use crate::dd::{ComplexDd, DoubleDouble};
use crate::linalg::{solve_hpd, Field, Matrix};
use crate::series::{norm_sq_2d, weight_1var, weight_2d, Alpha, BivarPoly, Flavor, MultiIndex, UnivarPoly};

/// Degree budgets above this assemble the Gram matrix in double-double
/// under [`Precision::Auto`].
pub const EXTENDED_PRECISION_DEGREE: u32 = 24;

/// Which multipliers enter the linear system.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Reduction {
    /// Only multipliers coupled to the constant term. Monomials `z^p, z^q`
    /// interact only when `p - q` is a difference of two exponents of `f`;
    /// every other block has a zero right-hand side and a zero solution.
    #[default]
    Component,
    /// The full basis of total degree at most `D`.
    Full,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Precision {
    /// Double-double Gram entries when `D > EXTENDED_PRECISION_DEGREE`.
    #[default]
    Auto,
    Double,
    DoubleDouble,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub reduction: Reduction,
    pub precision: Precision,
    pub refine_steps: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { reduction: Reduction::Component, precision: Precision::Auto, refine_steps: 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum ApproxError {
    #[error("Gram matrix is singular (pivot {pivot}, condition estimate {cond_estimate:e})")]
    SingularGram { pivot: usize, cond_estimate: f64 },
}

/// Optimal approximant for one degree budget.
#[derive(Clone, Debug, PartialEq)]
pub struct Approximant {
    pub max_degree: u32,
    /// `min_p ||p f - 1||^2`.
    pub dist_sq: f64,
    pub p_star: BivarPoly,
    /// Condition estimate of the equilibrated Gram matrix.
    pub cond_estimate: f64,
    /// Size of the linear system actually solved.
    pub unknowns: usize,
    pub extended_precision: bool,
    pub relative_residual: f64,
}

/// `dist^2(1, f * P_D)` in `D_alpha`, with default options.
pub fn dist_sq_opt(f: &BivarPoly, alpha: Alpha, spec: BasisSpec) -> Result<Approximant, ApproxError> {
    dist_sq_opt_with(f, alpha, spec, &SolveOptions::default())
}

pub fn dist_sq_opt_with(
    f: &BivarPoly,
    alpha: Alpha,
    spec: BasisSpec,
    opts: &SolveOptions,
) -> Result<Approximant, ApproxError> {
    if f.is_zero() {
        return Err(ApproxError::SingularGram { pivot: 0, cond_estimate: f64::INFINITY });
    }
    let unknowns = match opts.reduction {
        Reduction::Full => enumerate_basis(spec),
        Reduction::Component => coupled_component(f, spec),
    };
    let extended = match opts.precision {
        Precision::Auto => spec.max_degree > EXTENDED_PRECISION_DEGREE,
        Precision::Double => false,
        Precision::DoubleDouble => true,
    };
    let max_total = spec.max_degree + f.degree().unwrap_or(0);
    let weights = WeightTable::new(max_total, |i| weight_2d(alpha, i));
    let sol = solve_weighted(f, &weights, &unknowns, extended, opts.refine_steps)?;
    Ok(Approximant {
        max_degree: spec.max_degree,
        dist_sq: sol.dist_sq,
        p_star: sol.p_star,
        cond_estimate: sol.cond_estimate,
        unknowns: unknowns.len(),
        extended_precision: extended,
        relative_residual: sol.relative_residual,
    })
}

/// Exponents reachable from `(0,0)` inside the basis by steps in
/// `supp f - supp f`.
fn coupled_component(f: &BivarPoly, spec: BasisSpec) -> Vec<MultiIndex> {
    let support: Vec<MultiIndex> = f.support().collect();
    let mut steps = BTreeSet::new();
    for s in &support {
        for t in &support {
            if s != t {
                steps.insert(s.offset(*t));
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut stack = alloc::vec![MultiIndex::ZERO];
    seen.insert(MultiIndex::ZERO);
    while let Some(p) = stack.pop() {
        for (dk, dl) in &steps {
            let (k, l) = (p.k as i64 + dk, p.l as i64 + dl);
            if k < 0 || l < 0 || k + l > spec.max_degree as i64 {
                continue;
            }
            let q = MultiIndex::new(k as u32, l as u32);
            if seen.insert(q) {
                stack.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

/// Dense cache of a weight function on `{k + l <= max_total}`.
struct WeightTable {
    max_total: u32,
    values: Vec<f64>,
}

impl WeightTable {
    fn new(max_total: u32, w: impl Fn(MultiIndex) -> f64) -> Self {
        let n = max_total as usize + 1;
        let mut values = alloc::vec![0.0; n * n];
        for k in 0..=max_total {
            for l in 0..=(max_total - k) {
                values[k as usize * n + l as usize] = w(MultiIndex::new(k, l));
            }
        }
        Self { max_total, values }
    }

    fn get(&self, i: MultiIndex) -> f64 {
        let n = self.max_total as usize + 1;
        self.values[i.k as usize * n + i.l as usize]
    }
}

struct WeightedSolution {
    dist_sq: f64,
    p_star: BivarPoly,
    cond_estimate: f64,
    relative_residual: f64,
}

fn solve_weighted(
    f: &BivarPoly,
    weights: &WeightTable,
    unknowns: &[MultiIndex],
    extended: bool,
    refine_steps: usize,
) -> Result<WeightedSolution, ApproxError> {
    if f.is_real() {
        solve_weighted_in::<f64>(f, weights, unknowns, extended, refine_steps)
    } else {
        solve_weighted_in::<Complex64>(f, weights, unknowns, extended, refine_steps)
    }
}

/// Gram entry `<z^q f, z^p f>_w = sum_{s, t: q + s = p + t} w(q+s) a_s conj(a_t)`.
fn gram_entry(f: &BivarPoly, weights: &WeightTable, p: MultiIndex, q: MultiIndex, extended: bool) -> Complex64 {
    let mut plain = Complex64::new(0.0, 0.0);
    let mut acc = ComplexDd::ZERO;
    for (s, a_s) in f.terms() {
        let m = q + s;
        let Some(t) = m.checked_sub(p) else { continue };
        let a_t = f.coeff(t);
        if a_t == Complex64::new(0.0, 0.0) {
            continue;
        }
        let w = weights.get(m);
        if extended {
            acc = acc.add_scaled_product(w, a_s, a_t.conj());
        } else {
            plain += a_s * a_t.conj() * w;
        }
    }
    if extended {
        acc.to_complex()
    } else {
        plain
    }
}

fn solve_weighted_in<T: Field>(
    f: &BivarPoly,
    weights: &WeightTable,
    unknowns: &[MultiIndex],
    extended: bool,
    refine_steps: usize,
) -> Result<WeightedSolution, ApproxError> {
    let n = unknowns.len();
    let mut gram = Matrix::<T>::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let v = gram_entry(f, weights, unknowns[i], unknowns[j], extended);
            gram.set(i, j, T::from_complex(v));
            gram.set(j, i, T::from_complex(v.conj()));
        }
    }

    // Equilibrate with powers of two so the scaling itself is exact.
    let exps: Vec<i32> = (0..n)
        .map(|i| {
            let d = gram.get(i, i).re();
            if d > 0.0 {
                libm::ilogb(d) / 2
            } else {
                0
            }
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            let v = gram.get(i, j);
            gram.set(i, j, T::from_complex(v.to_complex() * libm::ldexp(1.0, -exps[i] - exps[j])));
        }
    }

    let a0 = f.coeff(MultiIndex::ZERO);
    let w0 = weights.get(MultiIndex::ZERO);
    let zero_pos = unknowns.iter().position(|u| *u == MultiIndex::ZERO);
    let mut rhs = alloc::vec![T::default(); n];
    if let Some(z) = zero_pos {
        rhs[z] = T::from_complex(a0.conj() * w0 * libm::ldexp(1.0, -exps[z]));
    }

    let sol = solve_hpd(&gram, &rhs, refine_steps)
        .map_err(|(e, cond)| ApproxError::SingularGram { pivot: e.pivot, cond_estimate: cond })?;

    let coeffs: Vec<Complex64> =
        sol.x.iter().zip(&exps).map(|(y, e)| y.to_complex() * libm::ldexp(1.0, -*e)).collect();

    // dist^2 = w0 - r^H c = w0 (1 - Re(a0 c0)).
    let dist_sq = match zero_pos {
        Some(z) => {
            let c0 = coeffs[z];
            let one_minus = DoubleDouble::from_f64(1.0) - DoubleDouble::product(a0.re, c0.re)
                + DoubleDouble::product(a0.im, c0.im);
            one_minus.mul_f64(w0).to_f64().max(0.0)
        }
        None => w0,
    };

    let p_star = unknowns.iter().copied().zip(coeffs).collect();
    Ok(WeightedSolution {
        dist_sq,
        p_star,
        cond_estimate: sol.cond_estimate,
        relative_residual: sol.relative_residual,
    })
}

/// Normal-equation certificate: the largest
/// `|<p f - 1, z^q f>_alpha| / (||f||_alpha ||z^q f||_alpha)` over the basis,
/// evaluated from the polynomials themselves.
pub fn orthogonality_defect(f: &BivarPoly, alpha: Alpha, spec: BasisSpec, p_star: &BivarPoly) -> f64 {
    let residual = &(p_star * f) - &BivarPoly::one();
    let f_norm = libm::sqrt(norm_sq_2d(f, alpha));
    let mut worst: f64 = 0.0;
    for q in enumerate_basis(spec) {
        let mut acc = ComplexDd::ZERO;
        let mut shifted_sq = 0.0;
        for (s, a_s) in f.terms() {
            let m = q + s;
            let w = weight_2d(alpha, m);
            shifted_sq += w * a_s.norm_sqr();
            let h = residual.coeff(m);
            if h != Complex64::new(0.0, 0.0) {
                acc = acc.add_scaled_product(w, h, a_s.conj());
            }
        }
        let denom = f_norm * libm::sqrt(shifted_sq);
        worst = worst.max(acc.to_complex().norm() / denom);
    }
    worst
}

/// One-variable optimal approximant.
#[derive(Clone, Debug, PartialEq)]
pub struct Approximant1 {
    pub degree: u32,
    pub dist_sq: f64,
    pub p_star: UnivarPoly,
    pub cond_estimate: f64,
}

/// `min ||p g - 1||^2` over `deg p <= degree` for the weighted norm
/// `sum weight(k) |c_k|^2`.
pub fn dist_sq_weighted_1var(
    g: &UnivarPoly,
    weight: impl Fn(u32) -> f64,
    degree: u32,
    precision: Precision,
) -> Result<Approximant1, ApproxError> {
    if g.is_zero() {
        return Err(ApproxError::SingularGram { pivot: 0, cond_estimate: f64::INFINITY });
    }
    // Embed on the z1 axis; only (k, 0) weights are ever read.
    let f: BivarPoly = g.terms().map(|(k, c)| (MultiIndex::new(k, 0), c)).collect();
    let max_total = degree + g.degree().unwrap_or(0);
    let weights = WeightTable::new(max_total, |i| if i.l == 0 { weight(i.k) } else { 0.0 });
    let unknowns: Vec<MultiIndex> = (0..=degree).map(|k| MultiIndex::new(k, 0)).collect();
    let extended = match precision {
        Precision::Auto => degree > EXTENDED_PRECISION_DEGREE,
        Precision::Double => false,
        Precision::DoubleDouble => true,
    };
    let sol = solve_weighted(&f, &weights, &unknowns, extended, 1)?;
    let p_star = UnivarPoly::from_coeffs(g.flavor(), sol.p_star.terms().map(|(i, c)| (i.k, c)));
    Ok(Approximant1 { degree, dist_sq: sol.dist_sq, p_star, cond_estimate: sol.cond_estimate })
}

/// One-variable approximant in the space named by `g`'s flavor.
pub fn dist_sq_1var(g: &UnivarPoly, alpha: Alpha, degree: u32) -> Result<Approximant1, ApproxError> {
    let flavor: Flavor = g.flavor();
    dist_sq_weighted_1var(g, |k| weight_1var(flavor, alpha, k), degree, Precision::Auto)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::parse_poly;
    use approx::assert_relative_eq;

    fn a(x: f64) -> Alpha {
        Alpha::new(x).unwrap()
    }

    #[test]
    fn constants_are_inverted_exactly() {
        for alpha in [-1.0, 0.0, 1.0, 2.0] {
            let one = dist_sq_opt(&BivarPoly::one(), a(alpha), BasisSpec::new(0)).unwrap();
            assert_eq!(one.dist_sq, 0.0);
            assert_eq!(one.p_star, BivarPoly::one());

            let two = dist_sq_opt(&parse_poly("2").unwrap(), a(alpha), BasisSpec::new(0)).unwrap();
            assert_eq!(two.dist_sq, 0.0);
            assert_eq!(two.p_star, parse_poly("0.5").unwrap());
        }
    }

    #[test]
    fn zero_function_is_singular() {
        let err = dist_sq_opt(&BivarPoly::zero(), a(1.0), BasisSpec::new(3)).unwrap_err();
        assert!(matches!(err, ApproxError::SingularGram { .. }));
    }

    #[test]
    fn vanishing_at_origin_gives_trivial_distance() {
        let f = parse_poly("z1 + z2^2").unwrap();
        let r = dist_sq_opt(&f, a(1.5), BasisSpec::new(6)).unwrap();
        assert_relative_eq!(r.dist_sq, libm::pow(2.0, 1.5), max_relative = 1e-15);
        assert!(r.p_star.is_zero());
    }

    #[test]
    fn component_matches_full_solve() {
        let f = parse_poly("1 - z1").unwrap();
        for d in [1, 5, 12] {
            let spec = BasisSpec::new(d);
            let reduced = dist_sq_opt(&f, a(1.0), spec).unwrap();
            let full = dist_sq_opt_with(&f, a(1.0), spec, &SolveOptions { reduction: Reduction::Full, ..Default::default() })
                .unwrap();
            assert_eq!(reduced.unknowns, d as usize + 1);
            assert_eq!(full.unknowns, spec.len());
            assert_relative_eq!(reduced.dist_sq, full.dist_sq, max_relative = 1e-12);
            assert!(reduced.p_star.approx_eq(&full.p_star, 1e-10));
        }
    }

    #[test]
    fn one_step_hand_solution() {
        // D = 1, f = 1 - z1, alpha = 0: weights w00 = 1, w10 = 1/2, w20 = 1/3.
        // Gram [[1 + 1/2, -1/2], [-1/2, 1/2 + 1/3]], rhs [1, 0].
        let f = parse_poly("1 - z1").unwrap();
        let r = dist_sq_opt(&f, a(0.0), BasisSpec::new(1)).unwrap();
        let det = 1.5 * (5.0 / 6.0) - 0.25;
        let c0 = (5.0 / 6.0) / det;
        assert_relative_eq!(r.dist_sq, 1.0 - c0, max_relative = 1e-14);
        assert_relative_eq!(r.p_star.coeff(MultiIndex::new(1, 0)).re, 0.5 / det, max_relative = 1e-14);
    }

    #[test]
    fn complex_functions_use_hermitian_solve() {
        let f = parse_poly("1 - i*z1").unwrap();
        let g = parse_poly("1 - z1").unwrap();
        // A rotation z1 -> i z1 leaves the norm unchanged.
        let spec = BasisSpec::new(8);
        let rf = dist_sq_opt(&f, a(1.0), spec).unwrap();
        let rg = dist_sq_opt(&g, a(1.0), spec).unwrap();
        assert_relative_eq!(rf.dist_sq, rg.dist_sq, max_relative = 1e-12);
        assert!(orthogonality_defect(&f, a(1.0), spec, &rf.p_star) < 1e-12);
    }

    #[test]
    fn one_variable_solver_hand_case() {
        // g = 1 - z in H^2 (alpha = 0): dist^2 with degree n is 1/(n+2).
        let g = UnivarPoly::from_real(Flavor::DiskD, &[1.0, -1.0]);
        for n in [0, 1, 4, 9] {
            let r = dist_sq_1var(&g, a(0.0), n).unwrap();
            assert_relative_eq!(r.dist_sq, 1.0 / (n as f64 + 2.0), max_relative = 1e-13);
        }
    }
}
