//! Calculus of the map from a distinct positive root vector to its
//! elementary-symmetric coefficient vector: forward Jacobian by the
//! coefficient-derivative recurrence, closed-form inverse Jacobian, weighted
//! power sums with their vanishing/normalization identities, Newton
//! identities, divided differences, and the gradient of the Laplacian-like
//! energy with respect to the coefficients.

use num_complex::Complex64;
use thiserror::Error;

use crate::dd::Dd;

/// Default gap floor as a fraction of the largest root: below this the
/// barycentric weights 1/ω'(x_i) are too ill-conditioned to trust.
pub const DEFAULT_GAP_FLOOR_FACTOR: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum VietaError {
    #[error("root vector is empty")]
    EmptyRoots,
    #[error("root {0} is not strictly positive")]
    NonPositiveRoot(f64),
    #[error("root {0} is not finite")]
    NonFiniteRoot(f64),
    #[error("repeated roots: min gap {min_gap} below floor {gap_floor}")]
    RepeatedRoots { min_gap: f64, gap_floor: f64 },
    #[error("root {value} is within the gap floor {gap_floor} of zero")]
    ZeroEigenvalueIncluded { value: f64, gap_floor: f64 },
    #[error("function value at node {at} is not finite")]
    NonFiniteFunctionValue { at: f64 },
    #[error("divided difference {value} contradicts the declared derivative sign")]
    SignMismatch { value: f64 },
    #[error("no real simple roots recovered: {0}")]
    NoRealSimpleRoots(String),
}

/// Strictly decreasing distinct positive roots with precomputed
/// ω'(x_i) = Π_{k≠i} (x_i - x_k).
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedRoots {
    x: Vec<f64>,
    omega_prime: Vec<f64>,
    min_gap: f64,
    gap_floor: f64,
}

impl PreparedRoots {
    /// Validates, sorts descending, and precomputes ω'. The gap floor
    /// defaults to `DEFAULT_GAP_FLOOR_FACTOR` times the largest root.
    pub fn new(roots: Vec<f64>) -> Result<Self, VietaError> {
        Self::build(roots, None)
    }

    /// Same, with an explicit gap floor (still rejects exactly equal roots).
    pub fn with_gap_floor(roots: Vec<f64>, gap_floor: f64) -> Result<Self, VietaError> {
        Self::build(roots, Some(gap_floor))
    }

    fn build(mut x: Vec<f64>, floor: Option<f64>) -> Result<Self, VietaError> {
        if x.is_empty() {
            return Err(VietaError::EmptyRoots);
        }
        for &v in &x {
            if !v.is_finite() {
                return Err(VietaError::NonFiniteRoot(v));
            }
            if v <= 0.0 {
                return Err(VietaError::NonPositiveRoot(v));
            }
        }
        x.sort_by(|a, b| b.total_cmp(a));
        let gap_floor = floor.unwrap_or(DEFAULT_GAP_FLOOR_FACTOR * x[0]);
        let min_gap = x
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(f64::INFINITY, f64::min);
        if x.len() > 1 && (min_gap < gap_floor || min_gap == 0.0) {
            return Err(VietaError::RepeatedRoots { min_gap, gap_floor });
        }
        let omega_prime = (0..x.len())
            .map(|i| {
                x.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(_, &xk)| x[i] - xk)
                    .product()
            })
            .collect();
        Ok(PreparedRoots {
            x,
            omega_prime,
            min_gap,
            gap_floor,
        })
    }

    pub fn roots(&self) -> &[f64] {
        &self.x
    }

    pub fn omega_prime(&self) -> &[f64] {
        &self.omega_prime
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn min_gap(&self) -> f64 {
        self.min_gap
    }

    pub fn gap_floor(&self) -> f64 {
        self.gap_floor
    }
}

/// Real coefficient vector c_1..c_n (c_0 = 1 implicit), all positive when it
/// is the image of a positive root vector.
#[derive(Debug, Clone, PartialEq)]
pub struct RealCoeffs {
    c: Vec<f64>,
}

impl RealCoeffs {
    pub fn new(c: Vec<f64>) -> Self {
        RealCoeffs { c }
    }

    /// c_k for 1 <= k <= n.
    pub fn get(&self, k: usize) -> f64 {
        self.c[k - 1]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Entries ∂c_i/∂x_j.
    Forward,
    /// Entries ∂x_i/∂c_j.
    Inverse,
}

/// Dense Jacobian of the root->coefficient map or its inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianMatrix {
    n: usize,
    data: Vec<f64>,
    orientation: Orientation,
}

impl JacobianMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Entry (i, j), 0-indexed.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Plain f64 matrix product, row-major.
    pub fn multiply(&self, other: &JacobianMatrix) -> Vec<f64> {
        let n = self.n;
        assert_eq!(n, other.n);
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                for j in 0..n {
                    out[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }
}

/// Max-norm distance of a row-major square matrix from the identity.
pub fn max_deviation_from_identity(m: &[f64], n: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((m[i * n + j] - target).abs());
        }
    }
    worst
}

/// Elementary symmetric polynomials σ_1..σ_n of the roots, by the stable
/// one-root-at-a-time product recurrence.
pub fn elementary_symmetric(r: &PreparedRoots) -> RealCoeffs {
    RealCoeffs {
        c: sigma_f64(r.roots()),
    }
}

fn sigma_f64(roots: &[f64]) -> Vec<f64> {
    let mut c = vec![0.0; roots.len()];
    for (i, &x) in roots.iter().enumerate() {
        for k in (1..=i).rev() {
            c[k] += x * c[k - 1];
        }
        c[0] += x;
    }
    c
}

/// Forward Jacobian ∂c_i/∂x_j via the derivative recurrence
/// ∂c_i/∂x_j = c_{i-1} - x_j ∂c_{i-1}/∂x_j, base row all ones.
///
/// The subtraction cancels badly when x_j dominates the other roots, so the
/// recurrence is carried in double-double and rounded once per entry.
pub fn forward_jacobian(r: &PreparedRoots) -> JacobianMatrix {
    let n = r.len();
    // σ_1..σ_n of all roots, in double-double.
    let mut c = vec![Dd::ZERO; n];
    for (i, &x) in r.roots().iter().enumerate() {
        let x = Dd::from_f64(x);
        for k in (1..=i).rev() {
            c[k] = c[k] + x * c[k - 1];
        }
        c[0] = c[0] + x;
    }
    let mut rows = vec![Dd::ZERO; n * n];
    let mut data = vec![0.0; n * n];
    for j in 0..n {
        rows[j] = Dd::ONE;
        data[j] = 1.0;
    }
    for i in 1..n {
        let c_prev = c[i - 1];
        for j in 0..n {
            let entry = c_prev - Dd::from_f64(r.roots()[j]) * rows[(i - 1) * n + j];
            rows[i * n + j] = entry;
            data[i * n + j] = entry.to_f64();
        }
    }
    JacobianMatrix {
        n,
        data,
        orientation: Orientation::Forward,
    }
}

/// Direct evaluation of the forward Jacobian: entry (i, j) is σ_{i-1} of the
/// roots with x_j removed. Quadratically slower; kept as the independent
/// route the recurrence is checked against.
pub fn forward_jacobian_direct(r: &PreparedRoots) -> JacobianMatrix {
    let n = r.len();
    let mut data = vec![0.0; n * n];
    for j in 0..n {
        let reduced: Vec<f64> = r
            .roots()
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, &x)| x)
            .collect();
        let sig = sigma_f64(&reduced);
        data[j] = 1.0;
        for i in 1..n {
            data[i * n + j] = sig[i - 1];
        }
    }
    JacobianMatrix {
        n,
        data,
        orientation: Orientation::Forward,
    }
}

/// Closed-form inverse Jacobian: entry (i, j) = (-1)^(j-1) x_i^(n-j) / ω'(x_i).
pub fn inverse_jacobian(r: &PreparedRoots) -> JacobianMatrix {
    let n = r.len();
    let mut data = vec![0.0; n * n];
    for (i, (&xi, &wi)) in r.roots().iter().zip(r.omega_prime()).enumerate() {
        // powers x_i^(n-1) .. x_i^0 by repeated multiplication
        let mut pow = 1.0;
        let mut powers = vec![1.0; n];
        for slot in powers.iter_mut().skip(1) {
            pow *= xi;
            *slot = pow;
        }
        for j in 0..n {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            data[i * n + j] = sign * powers[n - 1 - j] / wi;
        }
    }
    JacobianMatrix {
        n,
        data,
        orientation: Orientation::Inverse,
    }
}

/// Weighted power sum s_m = Σ x_i^m / ω'(x_i). Vanishes for m <= n-2 and
/// equals 1 at m = n-1.
pub fn weighted_power_sum(r: &PreparedRoots, m: usize) -> f64 {
    r.roots()
        .iter()
        .zip(r.omega_prime())
        .map(|(&x, &w)| x.powi(m as i32) / w)
        .sum()
}

/// Residual of the shifted Newton recurrence
/// Σ_{t=0..k} (-1)^t c_{k-t} s_{n-1+t}, with c_0 = 1 and c_j = 0 for j > n.
/// Exactly zero in exact arithmetic for every k >= 1.
pub fn weighted_sum_recurrence_residual(r: &PreparedRoots, k: usize) -> f64 {
    assert!(k >= 1, "recurrence index starts at 1");
    let n = r.len();
    let c = elementary_symmetric(r);
    let mut acc = 0.0;
    for t in 0..=k {
        let coeff = match k - t {
            0 => 1.0,
            j if j <= n => c.get(j),
            _ => 0.0,
        };
        let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * coeff * weighted_power_sum(r, n - 1 + t);
    }
    acc
}

/// Residual of the classical Newton-Girard identity
/// k c_k - Σ_{i=1..k} (-1)^(i-1) c_{k-i} p_i with unweighted power sums
/// p_i = Σ x_j^i.
pub fn newton_identity_residual(r: &PreparedRoots, k: usize) -> f64 {
    assert!(k >= 1 && k <= r.len(), "need 1 <= k <= n");
    let c = elementary_symmetric(r);
    let p = |i: usize| -> f64 { r.roots().iter().map(|&x| x.powi(i as i32)).sum() };
    let mut sum = 0.0;
    for i in 1..=k {
        let coeff = if k == i { 1.0 } else { c.get(k - i) };
        let sign = if (i - 1) % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * coeff * p(i);
    }
    k as f64 * c.get(k) - sum
}

/// Divided difference Σ f(x_i)/ω'(x_i): the leading coefficient of the
/// interpolating polynomial of f at the nodes, i.e. f^(n-1)(ξ)/(n-1)! for
/// some ξ inside the node interval.
pub fn divided_difference<F>(f: F, r: &PreparedRoots) -> Result<f64, VietaError>
where
    F: Fn(f64) -> f64,
{
    let mut acc = 0.0;
    for (&x, &w) in r.roots().iter().zip(r.omega_prime()) {
        let fx = f(x);
        if !fx.is_finite() {
            return Err(VietaError::NonFiniteFunctionValue { at: x });
        }
        acc += fx / w;
    }
    Ok(acc)
}

/// Sign of f^(n-1) on the node interval, when the caller knows it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeSign {
    Positive,
    Negative,
}

/// Divided difference with a declared derivative sign; errors if the
/// computed value contradicts it.
pub fn divided_difference_checked<F>(
    f: F,
    r: &PreparedRoots,
    sign: DerivativeSign,
) -> Result<f64, VietaError>
where
    F: Fn(f64) -> f64,
{
    let value = divided_difference(f, r)?;
    let ok = match sign {
        DerivativeSign::Positive => value > 0.0,
        DerivativeSign::Negative => value < 0.0,
    };
    if ok {
        Ok(value)
    } else {
        Err(VietaError::SignMismatch { value })
    }
}

/// Gradient of LEL = Σ √μ_i with respect to the coefficients c_1..c_N:
/// entry k is ((-1)^(k-1)/2) Σ_i μ_i^(N-k) / (ω'(μ_i) √μ_i). Strictly
/// positive for every valid root vector.
pub fn lel_gradient(mu: &PreparedRoots) -> Result<Vec<f64>, VietaError> {
    let n = mu.len();
    if let Some(&smallest) = mu.roots().last() {
        if smallest <= mu.gap_floor() {
            return Err(VietaError::ZeroEigenvalueIncluded {
                value: smallest,
                gap_floor: mu.gap_floor(),
            });
        }
    }
    let mut grad = Vec::with_capacity(n);
    for k in 1..=n {
        let sum: f64 = mu
            .roots()
            .iter()
            .zip(mu.omega_prime())
            .map(|(&x, &w)| x.powi((n - k) as i32) / (w * x.sqrt()))
            .sum();
        let sign = if (k - 1) % 2 == 0 { 1.0 } else { -1.0 };
        grad.push(0.5 * sign * sum);
    }
    Ok(grad)
}

/// LEL of a root vector, Σ √x_i.
pub fn lel_of_roots(r: &PreparedRoots) -> f64 {
    r.roots().iter().map(|&x| x.sqrt()).sum()
}

const ROOT_RESIDUAL_TOL: f64 = 1e-12;
const ROUND_TRIP_TOL: f64 = 1e-9;

/// Recovers the positive simple roots of
/// x^n - c_1 x^(n-1) + ... + (-1)^n c_n by simultaneous (Weierstrass)
/// iteration, warm-started from `guess` when provided, then Newton-polished.
///
/// Fails with `NoRealSimpleRoots` unless every root is real and simple, the
/// monic residual at each root is below 1e-12 of its term-magnitude scale,
/// and the elementary-symmetric round trip reproduces `c` to 1e-9 relative.
pub fn roots_from_coeffs(
    c: &RealCoeffs,
    guess: Option<&PreparedRoots>,
) -> Result<PreparedRoots, VietaError> {
    let n = c.len();
    if n == 0 {
        return Err(VietaError::EmptyRoots);
    }
    // Signed monic coefficients a_0..a_n of x^n - c_1 x^(n-1) + ...
    let mut a = vec![1.0f64; n + 1];
    for (k, slot) in a.iter_mut().enumerate().skip(1) {
        *slot = if k % 2 == 0 { c.get(k) } else { -c.get(k) };
    }

    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &ak in &a {
            acc = acc * z + ak;
        }
        acc
    };

    let mut z: Vec<Complex64> = match guess {
        Some(g) if g.len() == n => g.roots().iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        _ => {
            // Spread starting points on a spiral around the mean root.
            let mean = (c.get(1) / n as f64).max(1e-3);
            let seed = Complex64::new(0.4, 0.9);
            let mut pt = Complex64::new(1.0, 0.0);
            (0..n)
                .map(|_| {
                    pt *= seed;
                    Complex64::new(mean, 0.0) + pt * mean
                })
                .collect()
        }
    };

    let scale = a.iter().fold(0.0f64, |m, &v| m.max(v.abs())).max(1.0);
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm_sqr() == 0.0 {
                // coincident iterates: nudge apart
                z[i] += Complex64::new(1e-8 * scale.max(1.0), 1e-8);
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        // Near machine precision the iterates can cycle by an ulp or two;
        // the residual and round-trip checks below are the acceptance gate.
        if max_step <= 4e-15 * (1.0 + z.iter().fold(0.0f64, |m, v| m.max(v.norm()))) {
            break;
        }
    }

    // All roots must be (numerically) real.
    let mut roots = Vec::with_capacity(n);
    for zi in &z {
        if zi.im.abs() > 1e-7 * (1.0 + zi.re.abs()) {
            return Err(VietaError::NoRealSimpleRoots(format!("complex root {zi}")));
        }
        roots.push(zi.re);
    }

    // Newton polish with the residual evaluated in double-double: for large
    // coefficient vectors a plain f64 Horner loses the residual to rounding,
    // which would cap root accuracy at eps times the evaluation condition
    // number and poison finite differences taken across nearby solves.
    let deriv: Vec<f64> = (0..n).map(|j| (n - j) as f64 * a[j]).collect();
    let horner =
        |coeffs: &[f64], x: f64| -> f64 { coeffs.iter().fold(0.0, |acc, &ck| acc * x + ck) };
    let horner_dd = |coeffs: &[f64], x: f64| -> f64 {
        let xd = Dd::from_f64(x);
        coeffs
            .iter()
            .fold(Dd::ZERO, |acc, &ck| acc * xd + Dd::from_f64(ck))
            .to_f64()
    };
    for x in &mut roots {
        for _ in 0..3 {
            let d = horner(&deriv, *x);
            if d != 0.0 {
                *x -= horner_dd(&a, *x) / d;
            }
        }
    }

    let prepared = PreparedRoots::new(roots)
        .map_err(|e| VietaError::NoRealSimpleRoots(format!("invalid root vector: {e}")))?;

    // Residual check against the term-magnitude scale at each root.
    for &x in prepared.roots() {
        let mut mag = 0.0;
        for &ak in &a {
            mag = mag * x.abs() + ak.abs();
        }
        let val = horner_dd(&a, x);
        if val.abs() > ROOT_RESIDUAL_TOL * mag.max(1.0) {
            return Err(VietaError::NoRealSimpleRoots(format!(
                "residual {val} at root {x} exceeds tolerance"
            )));
        }
    }

    // Round trip through the forward map.
    let back = elementary_symmetric(&prepared);
    for k in 1..=n {
        let want = c.get(k);
        if (back.get(k) - want).abs() > ROUND_TRIP_TOL * want.abs().max(1.0) {
            return Err(VietaError::NoRealSimpleRoots(format!(
                "round trip drifted at c_{k}"
            )));
        }
    }
    Ok(prepared)
}

/// Max-norm deviations of J_F · J_F⁻¹ and J_F⁻¹ · J_F from the identity,
/// with entries and products carried in double-double precision so the
/// result measures the identity itself rather than f64 rounding of the
/// check. Returns (forward·inverse, inverse·forward).
pub fn jacobian_product_residuals(r: &PreparedRoots) -> (f64, f64) {
    let n = r.len();
    let x: Vec<Dd> = r.roots().iter().map(|&v| Dd::from_f64(v)).collect();

    // ω'(x_i) in double-double.
    let omega: Vec<Dd> = (0..n)
        .map(|i| {
            let mut acc = Dd::ONE;
            for k in 0..n {
                if k != i {
                    acc = acc * (x[i] - x[k]);
                }
            }
            acc
        })
        .collect();

    // Forward entries via σ_{i-1} of the roots with x_j removed.
    let mut fwd = vec![Dd::ZERO; n * n];
    for j in 0..n {
        let mut sig = vec![Dd::ZERO; n];
        let mut used = 0usize;
        for (k, &xk) in x.iter().enumerate() {
            if k == j {
                continue;
            }
            used += 1;
            for t in (1..used).rev() {
                sig[t] = sig[t] + xk * sig[t - 1];
            }
            sig[0] = sig[0] + xk;
        }
        fwd[j] = Dd::ONE;
        for i in 1..n {
            fwd[i * n + j] = sig[i - 1];
        }
    }

    // Inverse entries (-1)^(j-1) x_i^(n-j) / ω'(x_i).
    let mut inv = vec![Dd::ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            let p = x[i].powi(n - 1 - j);
            let signed = if j % 2 == 0 { p } else { -p };
            inv[i * n + j] = signed / omega[i];
        }
    }

    let product_dev = |a: &[Dd], b: &[Dd]| -> f64 {
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Dd::ZERO;
                for k in 0..n {
                    acc = acc + a[i * n + k] * b[k * n + j];
                }
                let target = if i == j { Dd::ONE } else { Dd::ZERO };
                worst = worst.max((acc - target).to_f64().abs());
            }
        }
        worst
    };

    (product_dev(&fwd, &inv), product_dev(&inv, &fwd))
}
