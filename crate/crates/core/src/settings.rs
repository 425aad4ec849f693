/// Numerical tolerances and size limits shared by every operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    /// Max-norm bound on algebraic residuals (Hermiticity, idempotency, commutators).
    pub eps_alg: f64,
    /// Euclidean distance bound for subspace membership.
    pub eps_member: f64,
    /// Largest accepted Hilbert-space dimension.
    pub max_dim: usize,
}

impl Settings {
    pub const DEFAULT_EPS_ALG: f64 = 1e-10;
    pub const DEFAULT_EPS_MEMBER: f64 = 1e-9;
    pub const DEFAULT_MAX_DIM: usize = 16;

    pub fn with_eps_alg(mut self, eps: f64) -> Self {
        self.eps_alg = eps;
        self
    }

    pub fn with_eps_member(mut self, eps: f64) -> Self {
        self.eps_member = eps;
        self
    }

    pub(crate) fn check_dim(&self, dim: usize) -> crate::Result<()> {
        if dim == 0 {
            return Err(crate::Error::EmptyDimension);
        }
        if dim > self.max_dim {
            return Err(crate::Error::DimensionTooLarge {
                dim,
                cap: self.max_dim,
            });
        }
        Ok(())
    }
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            eps_alg: Self::DEFAULT_EPS_ALG,
            eps_member: Self::DEFAULT_EPS_MEMBER,
            max_dim: Self::DEFAULT_MAX_DIM,
        }
    }
}
