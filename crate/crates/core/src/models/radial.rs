/// An even function of `x_i - x_j`, given through the distance `|x_i - x_j|`.
pub trait Radial: Send + Sync {
    fn value(&self, r: f64) -> f64;

    /// Distance beyond which the function vanishes, if any.
    fn range(&self) -> Option<f64> {
        None
    }
}

impl<F: Fn(f64) -> f64 + Send + Sync> Radial for F {
    fn value(&self, r: f64) -> f64 {
        self(r)
    }
}

/// `amplitude * exp(-r^2 / width^2)`, optionally cut to zero beyond `cutoff`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian {
    pub amplitude: f64,
    pub width: f64,
    pub cutoff: Option<f64>,
}

impl Gaussian {
    pub fn new(amplitude: f64, width: f64) -> Self {
        Gaussian { amplitude, width, cutoff: None }
    }

    /// Truncated at four widths.
    pub fn truncated(amplitude: f64, width: f64) -> Self {
        Gaussian { amplitude, width, cutoff: Some(4.0 * width) }
    }
}

impl Radial for Gaussian {
    #[inline]
    fn value(&self, r: f64) -> f64 {
        if self.cutoff.is_some_and(|c| r > c) {
            return 0.0;
        }
        let s = r / self.width;
        self.amplitude * libm::exp(-s * s)
    }

    fn range(&self) -> Option<f64> {
        self.cutoff
    }
}
