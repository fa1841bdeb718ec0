use super::primes_up_to;

/// Van der Corput radical inverse of `index` in `base`.
pub fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while index > 0 {
        r += f * (index % base) as f64;
        index /= base;
        f *= inv;
    }
    r
}

/// Halton points in `[0,1)^d` with an optional Cranley-Patterson shift.
#[derive(Debug, Clone)]
pub struct Halton {
    bases: Vec<u64>,
    shift: Vec<f64>,
}

impl Halton {
    pub fn new(dim: usize) -> Self {
        let bases: Vec<u64> = primes_up_to(400).into_iter().take(dim).collect();
        assert_eq!(bases.len(), dim, "Halton dimension too large");
        Self {
            bases,
            shift: vec![0.0; dim],
        }
    }

    pub fn with_shift(mut self, shift: Vec<f64>) -> Self {
        assert_eq!(shift.len(), self.bases.len());
        self.shift = shift;
        self
    }

    pub fn dim(&self) -> usize {
        self.bases.len()
    }

    /// Writes point `index` into `out`. Index 0 is skipped by callers that
    /// want to avoid the origin.
    pub fn point(&self, index: u64, out: &mut [f64]) {
        for ((o, &b), &s) in out.iter_mut().zip(&self.bases).zip(&self.shift) {
            let v = radical_inverse(index, b) + s;
            *o = v - v.floor();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radical_inverse_base_two() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(2, 2), 0.25);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert!((radical_inverse(5, 3) - (2.0 / 3.0 + 1.0 / 9.0)).abs() < 1e-15);
    }

    #[test]
    fn halton_integrates_smooth_function() {
        let h = Halton::new(3);
        let mut p = [0.0; 3];
        let n = 20_000;
        let mut acc = 0.0;
        for i in 1..=n {
            h.point(i, &mut p);
            acc += p[0] * p[1] + p[2] * p[2];
        }
        let est = acc / n as f64;
        assert!((est - (0.25 + 1.0 / 3.0)).abs() < 1e-3);
    }
}
