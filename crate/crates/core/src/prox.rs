//! Closed-form losses, conjugates, thresholding maps and projections.
//!
//! Everything here is a pure function of its arguments. The task quadruple
//! ([`TaskSpec`]) bundles the residual loss, the coefficient regularizer, the
//! dictionary regularizer and the dictionary constraint set; the supported
//! combinations are sparse SVD, bi-clustering and nonnegative matrix
//! factorization with either a quadratic or a Huber residual.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis, Zip};

use crate::error::{invalid, shape, Result};
use crate::inference::DictionaryShard;

/// Residual loss `f(u)` applied to `x - W y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResidualKind {
    /// `½‖u‖²`
    Quadratic,
    /// Entrywise Huber loss with connection point `eta`.
    Huber { eta: f64 },
}

impl ResidualKind {
    pub fn huber(eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return invalid(format!("huber connection point must be positive, got {eta}"));
        }
        Ok(ResidualKind::Huber { eta })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ResidualKind::Quadratic => "quadratic",
            ResidualKind::Huber { .. } => "huber",
        }
    }

    /// `f(u)`.
    pub fn value(&self, u: ArrayView1<'_, f64>) -> f64 {
        match *self {
            ResidualKind::Quadratic => 0.5 * u.dot(&u),
            ResidualKind::Huber { eta } => {
                u.iter().map(|&v| if v.abs() < eta { v * v / (2.0 * eta) } else { v.abs() - eta / 2.0 }).sum()
            }
        }
    }

    /// Curvature of the conjugate: `f*(ν) = (c/2)‖ν‖²` with `c` returned here.
    pub fn conjugate_curvature(&self) -> f64 {
        match *self {
            ResidualKind::Quadratic => 1.0,
            ResidualKind::Huber { eta } => eta,
        }
    }

    /// Whether the conjugate domain is a strict subset of the whole space.
    pub fn has_bounded_domain(&self) -> bool {
        matches!(self, ResidualKind::Huber { .. })
    }

    pub fn in_domain(&self, nu: ArrayView1<'_, f64>) -> bool {
        match self {
            ResidualKind::Quadratic => true,
            ResidualKind::Huber { .. } => nu.iter().all(|v| v.abs() <= 1.0),
        }
    }

    /// Projection onto the conjugate domain (identity for the quadratic loss).
    pub fn project_domain(&self, nu: ArrayView1<'_, f64>) -> Array1<f64> {
        match self {
            ResidualKind::Quadratic => nu.to_owned(),
            ResidualKind::Huber { .. } => project_inf_ball(nu),
        }
    }

    pub fn project_domain_inplace(&self, nu: &mut Array1<f64>) {
        if self.has_bounded_domain() {
            nu.mapv_inplace(|v| v.clamp(-1.0, 1.0));
        }
    }
}

/// Elastic-net coefficient regularizer `γ‖y‖₁ + (δ/2)‖y‖²`, optionally
/// restricted to `y ⪰ 0` (infinite penalty on negative entries).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffRegularizer {
    pub gamma: f64,
    pub delta: f64,
    pub nonneg: bool,
}

impl CoeffRegularizer {
    pub fn new(gamma: f64, delta: f64, nonneg: bool) -> Result<Self> {
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return invalid(format!("l1 weight must be nonnegative, got {gamma}"));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return invalid(format!("l2 weight must be positive, got {delta}"));
        }
        Ok(Self { gamma, delta, nonneg })
    }

    /// `h(y)`; `+∞` when the one-sided variant sees a negative entry.
    pub fn value(&self, y: ArrayView1<'_, f64>) -> f64 {
        if self.nonneg && y.iter().any(|&v| v < 0.0) {
            return f64::INFINITY;
        }
        let l1: f64 = y.iter().map(|v| v.abs()).sum();
        self.gamma * l1 + 0.5 * self.delta * y.dot(&y)
    }

    /// `T_γ(z)` or `T⁺_γ(z)` depending on the variant.
    pub fn threshold(&self, z: ArrayView1<'_, f64>) -> Array1<f64> {
        if self.nonneg {
            z.mapv(|v| shrink_plus(v, self.gamma))
        } else {
            z.mapv(|v| shrink(v, self.gamma))
        }
    }

    /// Maximizer of `zᵀy - h(y)`, i.e. `(1/δ)·T_γ(z)` (one-sided when nonneg).
    pub fn argmax(&self, z: ArrayView1<'_, f64>) -> Array1<f64> {
        let inv = 1.0 / self.delta;
        let mut t = self.threshold(z);
        t.mapv_inplace(|v| v * inv);
        t
    }

    /// `h*(z) = S_{γ/δ}(z/δ)` (or `S⁺`), evaluated in closed form.
    pub fn conjugate(&self, z: ArrayView1<'_, f64>) -> f64 {
        let (g, d) = (self.gamma, self.delta);
        let level = g / d;
        z.iter()
            .map(|&zn| {
                let x = zn / d;
                let t = if self.nonneg { shrink_plus(x, level) } else { shrink(x, level) };
                -0.5 * d * t * t - g * t.abs() + d * x * t
            })
            .sum()
    }
}

/// Dictionary regularizer `h_W`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DictRegularizer {
    None,
    /// `β · Σ|W_mq|`
    L1Sum {
        beta: f64,
    },
}

impl DictRegularizer {
    pub fn l1_sum(beta: f64) -> Result<Self> {
        if !(beta >= 0.0 && beta.is_finite()) {
            return invalid(format!("dictionary l1 weight must be nonnegative, got {beta}"));
        }
        Ok(DictRegularizer::L1Sum { beta })
    }

    pub fn beta(&self) -> f64 {
        match *self {
            DictRegularizer::None => 0.0,
            DictRegularizer::L1Sum { beta } => beta,
        }
    }
}

/// Per-column constraint on dictionary atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintSet {
    UnitColumns,
    NonnegUnitColumns,
}

impl ConstraintSet {
    /// Exact floating-point membership test.
    pub fn contains(&self, w: ArrayView2<'_, f64>) -> bool {
        w.axis_iter(Axis(1)).all(|col| {
            let nonneg_ok = match self {
                ConstraintSet::UnitColumns => true,
                ConstraintSet::NonnegUnitColumns => col.iter().all(|&v| v >= 0.0),
            };
            nonneg_ok && l2_norm(col) <= 1.0
        })
    }
}

/// One row of the task table: `(f, h_y, h_W, 𝒲)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaskSpec {
    pub residual: ResidualKind,
    pub coeff_reg: CoeffRegularizer,
    pub dict_reg: DictRegularizer,
    pub constraint: ConstraintSet,
}

impl TaskSpec {
    pub fn new(
        residual: ResidualKind,
        coeff_reg: CoeffRegularizer,
        dict_reg: DictRegularizer,
        constraint: ConstraintSet,
    ) -> Result<Self> {
        if let ResidualKind::Huber { eta } = residual {
            ResidualKind::huber(eta)?;
        }
        CoeffRegularizer::new(coeff_reg.gamma, coeff_reg.delta, coeff_reg.nonneg)?;
        if let DictRegularizer::L1Sum { beta } = dict_reg {
            DictRegularizer::l1_sum(beta)?;
        }
        let nonneg_dict = constraint == ConstraintSet::NonnegUnitColumns;
        if coeff_reg.nonneg != nonneg_dict {
            return invalid("one-sided coefficient regularizer must pair with the nonnegative atom constraint");
        }
        Ok(Self { residual, coeff_reg, dict_reg, constraint })
    }

    pub fn sparse_svd(gamma: f64, delta: f64) -> Result<Self> {
        Self::new(
            ResidualKind::Quadratic,
            CoeffRegularizer::new(gamma, delta, false)?,
            DictRegularizer::None,
            ConstraintSet::UnitColumns,
        )
    }

    pub fn biclustering(gamma: f64, delta: f64, beta: f64) -> Result<Self> {
        Self::new(
            ResidualKind::Quadratic,
            CoeffRegularizer::new(gamma, delta, false)?,
            DictRegularizer::l1_sum(beta)?,
            ConstraintSet::UnitColumns,
        )
    }

    pub fn nmf(gamma: f64, delta: f64) -> Result<Self> {
        Self::new(
            ResidualKind::Quadratic,
            CoeffRegularizer::new(gamma, delta, true)?,
            DictRegularizer::None,
            ConstraintSet::NonnegUnitColumns,
        )
    }

    pub fn nmf_huber(gamma: f64, delta: f64, eta: f64) -> Result<Self> {
        Self::new(
            ResidualKind::huber(eta)?,
            CoeffRegularizer::new(gamma, delta, true)?,
            DictRegularizer::None,
            ConstraintSet::NonnegUnitColumns,
        )
    }
}

#[inline]
pub(crate) fn shrink(v: f64, lambda: f64) -> f64 {
    let m = v.abs() - lambda;
    if m > 0.0 {
        m.copysign(v)
    } else {
        0.0
    }
}

#[inline]
pub(crate) fn shrink_plus(v: f64, lambda: f64) -> f64 {
    (v - lambda).max(0.0)
}

pub(crate) fn l2_norm(v: ArrayView1<'_, f64>) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn check_level(lambda: f64) -> Result<()> {
    if lambda >= 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        invalid(format!("threshold level must be nonnegative, got {lambda}"))
    }
}

/// Entrywise `(|x|-λ)₊·sgn(x)`.
pub fn soft_threshold(x: ArrayView1<'_, f64>, lambda: f64) -> Result<Array1<f64>> {
    check_level(lambda)?;
    Ok(x.mapv(|v| shrink(v, lambda)))
}

/// Entrywise `(x-λ)₊`.
pub fn soft_threshold_plus(x: ArrayView1<'_, f64>, lambda: f64) -> Result<Array1<f64>> {
    check_level(lambda)?;
    Ok(x.mapv(|v| shrink_plus(v, lambda)))
}

/// Conjugate of the (possibly one-sided) elastic net at `z`.
pub fn coeff_conjugate(z: ArrayView1<'_, f64>, reg: &CoeffRegularizer) -> Result<f64> {
    let reg = CoeffRegularizer::new(reg.gamma, reg.delta, reg.nonneg)?;
    Ok(reg.conjugate(z))
}

/// `(f*(ν), ν ∈ 𝒱_f)`.
pub fn residual_conjugate(nu: ArrayView1<'_, f64>, kind: &ResidualKind) -> (f64, bool) {
    let value = 0.5 * kind.conjugate_curvature() * nu.dot(&nu);
    (value, kind.in_domain(nu))
}

/// Gradient of the residual loss with respect to `u`.
pub fn residual_grad(u: ArrayView1<'_, f64>, kind: &ResidualKind) -> Array1<f64> {
    match *kind {
        ResidualKind::Quadratic => u.to_owned(),
        ResidualKind::Huber { eta } => u.mapv(|v| if v.abs() < eta { v / eta } else { v.signum() }),
    }
}

/// Entrywise clamp to `[-1, 1]`.
pub fn project_inf_ball(nu: ArrayView1<'_, f64>) -> Array1<f64> {
    nu.mapv(|v| v.clamp(-1.0, 1.0))
}

/// Column-wise projection onto the constraint set. Columns whose norm
/// exceeds one are rescaled; the result always passes
/// [`ConstraintSet::contains`] exactly, including after rounding.
pub fn project_dictionary_columns(w: ArrayView2<'_, f64>, constraint: ConstraintSet) -> Array2<f64> {
    let mut out = w.to_owned();
    project_columns_inplace(&mut out, constraint);
    out
}

pub(crate) fn project_columns_inplace(w: &mut Array2<f64>, constraint: ConstraintSet) {
    for mut col in w.axis_iter_mut(Axis(1)) {
        if constraint == ConstraintSet::NonnegUnitColumns {
            col.mapv_inplace(|v| v.max(0.0));
        }
        let norm = l2_norm(col.view());
        if norm > 1.0 {
            col.mapv_inplace(|v| v / norm);
            // x/‖x‖ can round to a norm of 1 + ulp
            while l2_norm(col.view()) > 1.0 {
                col.mapv_inplace(|v| v * (1.0 - f64::EPSILON));
            }
        }
    }
}

/// Proximal map of `θ·Σ|W_mq|` under the Frobenius metric.
pub fn prox_matrix_l1(w: ArrayView2<'_, f64>, theta: f64) -> Result<Array2<f64>> {
    check_level(theta)?;
    Ok(w.mapv(|v| shrink(v, theta)))
}

/// `f(x - Σ W_k y_k) + Σ h(y_k)`.
pub fn primal_objective(
    x: ArrayView1<'_, f64>,
    shards: &[DictionaryShard],
    coeffs: &[Array1<f64>],
    task: &TaskSpec,
) -> Result<f64> {
    if shards.len() != coeffs.len() {
        return shape(format!("{} shards but {} coefficient blocks", shards.len(), coeffs.len()));
    }
    let mut residual = x.to_owned();
    let mut penalty = 0.0;
    for (shard, y) in shards.iter().zip(coeffs) {
        let atoms = shard.atoms();
        if atoms.nrows() != x.len() {
            return shape(format!(
                "shard {} has height {}, signal has length {}",
                shard.agent_id(),
                atoms.nrows(),
                x.len()
            ));
        }
        if atoms.ncols() != y.len() {
            return shape(format!(
                "shard {} has {} atoms but {} coefficients",
                shard.agent_id(),
                atoms.ncols(),
                y.len()
            ));
        }
        Zip::from(&mut residual).and(&atoms.dot(y)).for_each(|r, &v| *r -= v);
        penalty += task.coeff_reg.value(y.view());
    }
    Ok(task.residual.value(residual.view()) + penalty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    #[test]
    fn soft_threshold_examples() {
        let out = soft_threshold(array![2.5, -0.3, -4.0].view(), 1.0).unwrap();
        assert_eq!(out, array![1.5, 0.0, -3.0]);
        let x = array![0.3, -7.0, 0.0];
        assert_eq!(soft_threshold(x.view(), 0.0).unwrap(), x);
        assert_eq!(soft_threshold(array![0.7, -0.7].view(), 0.7).unwrap(), array![0.0, 0.0]);
        assert!(soft_threshold(x.view(), -1.0).is_err());
    }

    #[test]
    fn soft_threshold_plus_examples() {
        let out = soft_threshold_plus(array![1.2, -0.7, 0.4].view(), 0.5).unwrap();
        assert_abs_diff_eq!(out, array![0.7, 0.0, 0.0], epsilon = 1e-15);
        assert_eq!(soft_threshold_plus(array![-1.0, -0.1].view(), 0.2).unwrap(), array![0.0, 0.0]);
        assert_eq!(soft_threshold_plus(array![2.0, 0.5, -3.0].view(), 1.0).unwrap(), array![1.0, 0.0, 0.0]);
        assert!(soft_threshold_plus(array![1.0].view(), -0.5).is_err());
    }

    #[test]
    fn coeff_conjugate_examples() {
        let plain = CoeffRegularizer::new(1.0, 1.0, false).unwrap();
        assert_abs_diff_eq!(coeff_conjugate(array![2.0].view(), &plain).unwrap(), 0.5);
        let reg = CoeffRegularizer::new(0.3, 0.7, false).unwrap();
        assert_eq!(coeff_conjugate(Array1::zeros(4).view(), &reg).unwrap(), 0.0);
        let nonneg = CoeffRegularizer::new(1.0, 1.0, true).unwrap();
        assert_eq!(coeff_conjugate(array![-2.0].view(), &nonneg).unwrap(), 0.0);
        let bad = CoeffRegularizer { gamma: 1.0, delta: 0.0, nonneg: false };
        assert!(coeff_conjugate(array![1.0].view(), &bad).is_err());
    }

    #[test]
    fn residual_conjugate_examples() {
        let (v, ok) = residual_conjugate(array![3.0, 4.0].view(), &ResidualKind::Quadratic);
        assert_eq!((v, ok), (12.5, true));
        let huber = ResidualKind::huber(0.2).unwrap();
        let (v, ok) = residual_conjugate(array![1.0, -1.0].view(), &huber);
        assert_abs_diff_eq!(v, 0.2, epsilon = 1e-15);
        assert!(ok);
        let (v, ok) = residual_conjugate(array![1.5].view(), &huber);
        assert_abs_diff_eq!(v, 0.225, epsilon = 1e-15);
        assert!(!ok);
    }

    #[test]
    fn residual_grad_examples() {
        let huber = ResidualKind::huber(0.2).unwrap();
        let g = residual_grad(array![0.1, -0.5].view(), &huber);
        assert_abs_diff_eq!(g, array![0.5, -1.0], epsilon = 1e-15);
        assert_eq!(residual_grad(Array1::zeros(3).view(), &huber), Array1::<f64>::zeros(3));
        assert_eq!(residual_grad(Array1::zeros(3).view(), &ResidualKind::Quadratic), Array1::<f64>::zeros(3));
        assert_eq!(residual_grad(array![3.0, -2.0].view(), &ResidualKind::Quadratic), array![3.0, -2.0]);
    }

    #[test]
    fn inf_ball_projection() {
        assert_eq!(project_inf_ball(array![2.0, -0.5, -3.0].view()), array![1.0, -0.5, -1.0]);
        let feasible = array![0.2, -1.0, 1.0];
        assert_eq!(project_inf_ball(feasible.view()), feasible);
        assert_eq!(project_inf_ball(array![1.0 + 1e-9].view()), array![1.0]);
    }

    #[test]
    fn column_projection_examples() {
        let w = array![[3.0], [4.0]];
        let p = project_dictionary_columns(w.view(), ConstraintSet::UnitColumns);
        assert_abs_diff_eq!(p, array![[0.6], [0.8]], epsilon = 1e-15);

        let w = array![[0.3], [-0.4]];
        let p = project_dictionary_columns(w.view(), ConstraintSet::NonnegUnitColumns);
        assert_eq!(p, array![[0.3], [0.0]]);

        let w = array![[3.0], [-4.0]];
        let p = project_dictionary_columns(w.view(), ConstraintSet::NonnegUnitColumns);
        assert_eq!(p, array![[1.0], [0.0]]);

        let w = array![[-1.0, 0.5], [-2.0, 0.5]];
        let p = project_dictionary_columns(w.view(), ConstraintSet::NonnegUnitColumns);
        assert_eq!(p.column(0), array![0.0, 0.0]);
        assert!(ConstraintSet::NonnegUnitColumns.contains(p.view()));
    }

    #[test]
    fn prox_matrix_l1_examples() {
        let w = array![[0.5, -2.0], [0.0, 3.0]];
        assert_eq!(prox_matrix_l1(w.view(), 1.0).unwrap(), array![[0.0, -1.0], [0.0, 2.0]]);
        assert_eq!(prox_matrix_l1(w.view(), 0.0).unwrap(), w);
        let p = prox_matrix_l1(array![[0.02]].view(), 5e-3 * 0.01).unwrap();
        assert_abs_diff_eq!(p[[0, 0]], 0.01995, epsilon = 1e-15);
        assert!(prox_matrix_l1(w.view(), -0.1).is_err());
    }

    #[test]
    fn primal_objective_examples() {
        let task = TaskSpec::sparse_svd(1.0, 1.0).unwrap();
        let shard = DictionaryShard::new(0, array![[1.0], [0.0]]).unwrap();
        let x = array![1.0, 0.0];
        let v = primal_objective(x.view(), std::slice::from_ref(&shard), &[array![1.0]], &task).unwrap();
        assert_abs_diff_eq!(v, 1.5);

        let x = array![0.3, -2.0];
        let v = primal_objective(x.view(), std::slice::from_ref(&shard), &[array![0.0]], &task).unwrap();
        assert_abs_diff_eq!(v, task.residual.value(x.view()));

        let nmf = TaskSpec::nmf(1.0, 1.0).unwrap();
        let v = primal_objective(x.view(), std::slice::from_ref(&shard), &[array![-0.1]], &nmf).unwrap();
        assert_eq!(v, f64::INFINITY);
        assert!(v > 1e300);

        assert!(primal_objective(x.view(), &[shard], &[array![1.0, 2.0]], &task).is_err());
    }

    #[test]
    fn task_spec_rejects_inconsistent_rows() {
        let reg = CoeffRegularizer::new(0.1, 0.1, true).unwrap();
        let res = TaskSpec::new(ResidualKind::Quadratic, reg, DictRegularizer::None, ConstraintSet::UnitColumns);
        assert!(res.is_err());
        assert!(ResidualKind::huber(0.0).is_err());
        assert!(CoeffRegularizer::new(0.1, 0.0, false).is_err());
        assert!(DictRegularizer::l1_sum(-1.0).is_err());
    }
}
