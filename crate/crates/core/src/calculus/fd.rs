//! Five-point central differences with one Richardson level.

/// Step control for every numerical derivative in the crate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdStep {
    pub h: f64,
    pub richardson: bool,
}

impl Default for FdStep {
    fn default() -> Self {
        FdStep {
            h: 1e-3,
            richardson: true,
        }
    }
}

impl FdStep {
    pub fn new(h: f64, richardson: bool) -> Self {
        FdStep { h, richardson }
    }

    fn refine(&self, mut stencil: impl FnMut(f64) -> f64) -> f64 {
        let coarse = stencil(self.h);
        if self.richardson {
            let fine = stencil(0.5 * self.h);
            (16.0 * fine - coarse) / 15.0
        } else {
            coarse
        }
    }
}

pub fn central_first(mut f: impl FnMut(f64) -> f64, x: f64, step: FdStep) -> f64 {
    step.refine(|h| {
        (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
    })
}

pub fn central_second(mut f: impl FnMut(f64) -> f64, x: f64, step: FdStep) -> f64 {
    let f0 = f(x);
    step.refine(|h| {
        (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f0 + 16.0 * f(x + h) - f(x + 2.0 * h))
            / (12.0 * h * h)
    })
}

/// `∂²f/∂x∂y` from nested first-derivative stencils.
pub fn central_mixed(mut f: impl FnMut(f64, f64) -> f64, x: f64, y: f64, step: FdStep) -> f64 {
    const W: [(f64, f64); 4] = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];
    step.refine(|h| {
        let mut acc = 0.0;
        for (si, wi) in W {
            for (sj, wj) in W {
                acc += wi * wj * f(x + si * h, y + sj * h);
            }
        }
        acc / (144.0 * h * h)
    })
}
