/// Maximal runs of equal bytes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RleEbwt {
    pub runs: Vec<(u8, u64)>,
    pub n: u64,
}

impl RleEbwt {
    pub fn r(&self) -> usize {
        self.runs.len()
    }

    /// `n / r`, or 0 for an empty string.
    pub fn ratio(&self) -> f64 {
        if self.runs.is_empty() {
            0.0
        } else {
            self.n as f64 / self.runs.len() as f64
        }
    }

    pub fn decode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n as usize);
        for &(c, l) in &self.runs {
            out.extend(std::iter::repeat_n(c, l as usize));
        }
        out
    }
}

pub fn run_length_encode(bwt: &[u8]) -> RleEbwt {
    let mut runs: Vec<(u8, u64)> = Vec::new();
    for &c in bwt {
        match runs.last_mut() {
            Some((d, l)) if *d == c => *l += 1,
            _ => runs.push((c, 1)),
        }
    }
    RleEbwt {
        runs,
        n: bwt.len() as u64,
    }
}
