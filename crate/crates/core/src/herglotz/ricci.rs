use crate::frames::Classification;
use crate::submersion::Constraints;

/// The Ricci rows of the constraint system for a Ricci-flat ambient.
///
/// There the flow need not be isometric; what survives is that `|M|²` is
/// constant along each leaf.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciFlatReport {
    /// `false` when the ambient is not Ricci-flat; the residuals are then
    /// still filled in but carry no meaning for the check.
    pub applicable: bool,
    pub ricci_00: f64,
    pub ricci_0i: f64,
    pub ricci_ij: f64,
    pub scalar: f64,
    /// `max |u(|M|²)|`.
    pub leaf_vorticity: f64,
}

impl RicciFlatReport {
    pub fn worst(&self) -> f64 {
        self.ricci_00.max(self.ricci_0i).max(self.ricci_ij).max(self.scalar).max(self.leaf_vorticity)
    }

    /// Applicable and every residual within `tol`.
    pub fn passes(&self, tol: f64) -> bool {
        !self.applicable || self.worst() <= tol
    }
}

pub fn ricci_flat_check(ambient: &Classification, constraints: &Constraints) -> RicciFlatReport {
    RicciFlatReport {
        applicable: ambient.ricci_flat,
        ricci_00: constraints.ricci_00,
        ricci_0i: constraints.ricci_0i,
        ricci_ij: constraints.ricci_ij,
        scalar: constraints.scalar,
        leaf_vorticity: constraints.leaf_vorticity,
    }
}
