//! Bundled test fields over `Q_3` and `Q_5` of degree at most 4.

use num_bigint::BigInt;

use crate::error::Result;
use crate::localfield::LocalField;

/// A named field in tower format.
#[derive(Clone, Debug)]
pub struct CorpusField {
    pub name: &'static str,
    pub p: u64,
    pub f: usize,
    /// Eisenstein coefficients, lowest first, as integer `y`-coordinates.
    pub eisenstein: Vec<Vec<i64>>,
}

impl CorpusField {
    pub fn build(&self, prec: i64) -> Result<LocalField> {
        let c: Vec<Vec<BigInt>> = self.eisenstein.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
        LocalField::new(self.p, self.f, &c, prec)
    }

    pub fn degree(&self) -> usize {
        self.f * (self.eisenstein.len() - 1)
    }
}

fn entry(name: &'static str, p: u64, f: usize, eis: &[&[i64]]) -> CorpusField {
    CorpusField { name, p, f, eisenstein: eis.iter().map(|c| c.to_vec()).collect() }
}

/// Test fields of degree at most 4 over `Q_5` and `Q_3`.
pub fn corpus() -> Vec<CorpusField> {
    vec![
        entry("Q5", 5, 1, &[&[-5], &[1]]),
        entry("Q5(sqrt5)", 5, 1, &[&[-5], &[0], &[1]]),
        entry("Q5(sqrt10)", 5, 1, &[&[-10], &[0], &[1]]),
        entry("Q25", 5, 2, &[&[-5], &[1]]),
        entry("Q125", 5, 3, &[&[-5], &[1]]),
        entry("Q625", 5, 4, &[&[-5], &[1]]),
        entry("Q5(5^(1/3))", 5, 1, &[&[-5], &[0], &[0], &[1]]),
        entry("Q5(5^(1/4))", 5, 1, &[&[-5], &[0], &[0], &[0], &[1]]),
        entry("Q25(sqrt5)", 5, 2, &[&[-5], &[0], &[1]]),
        entry("Q3", 3, 1, &[&[-3], &[1]]),
        entry("Q3(sqrt3)", 3, 1, &[&[-3], &[0], &[1]]),
        entry("Q3(sqrt-3)", 3, 1, &[&[3], &[0], &[1]]),
        entry("Q9", 3, 2, &[&[-3], &[1]]),
        entry("Q27", 3, 3, &[&[-3], &[1]]),
        entry("Q81", 3, 4, &[&[-3], &[1]]),
        entry("Q3(3^(1/3))", 3, 1, &[&[-3], &[0], &[0], &[1]]),
        entry("Q3(x^3+3x^2+6)", 3, 1, &[&[6], &[0], &[3], &[1]]),
        entry("Q3(3^(1/4))", 3, 1, &[&[-3], &[0], &[0], &[0], &[1]]),
        entry("Q9(sqrt3)", 3, 2, &[&[-3], &[0], &[1]]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_fields_build() {
        let c = corpus();
        assert!(c.len() >= 10);
        for e in &c {
            let k = e.build(16).unwrap();
            assert_eq!(k.degree(), e.degree(), "{}", e.name);
            assert!(k.degree() <= 4);
        }
    }
}
