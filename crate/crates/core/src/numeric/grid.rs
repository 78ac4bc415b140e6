use crate::error::{Error, Result};

/// Uniform grid in the contour parameter; the two end nodes carry Dirichlet
/// conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::InvalidParameter(format!(
                "grid needs x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < 3 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 3 points, got {n_points}"
            )));
        }
        Ok(Grid { x_min, x_max, n_points })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Number of unknowns once the Dirichlet ends are removed.
    pub fn interior(&self) -> usize {
        self.n_points - 2
    }

    pub fn h(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            self.x_min + i as f64 * self.h()
        }
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// Same interval with the step halved.
    pub fn refined(&self) -> Grid {
        Grid {
            n_points: 2 * self.n_points - 1,
            ..*self
        }
    }
}
