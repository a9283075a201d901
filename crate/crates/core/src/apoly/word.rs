use std::fmt;

use serde::{Deserialize, Serialize};

use crate::charvariety::{PretzelParams, RepTriple};
use crate::sl2::Mat2;

/// A letter `x_gen^exp` with `exp = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub gen: u8,
    pub exp: i8,
}

/// Freely reduced word in the Wirtinger generators `x1, x2, x3`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

/// Orientation of each generator as a meridian: `x3` runs against `x1, x2`,
/// which is why `ρ(x3⁻¹)` is the third matrix of a representation.
pub const MERIDIAN_ORIENTATION: [i64; 3] = [1, 1, -1];

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn gen(g: u8, exp: i8) -> Self {
        assert!((1..=3).contains(&g) && exp.abs() == 1, "bad letter x{g}^{exp}");
        GroupWord { letters: vec![Letter { gen: g, exp }] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        for l in &other.letters {
            match letters.last() {
                Some(last) if last.gen == l.gen && last.exp == -l.exp => {
                    letters.pop();
                }
                _ => letters.push(*l),
            }
        }
        GroupWord { letters }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| Letter { gen: l.gen, exp: -l.exp }).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(GroupWord::identity(), |acc, _| acc.mul(&base))
    }

    /// Image in the abelianization `ℤ = ⟨m⟩`, counting each letter with its
    /// meridian orientation. Zero for words in the commutator subgroup.
    pub fn abelianized_exponent(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| MERIDIAN_ORIENTATION[(l.gen - 1) as usize] * l.exp as i64)
            .sum()
    }

    /// Image under `x1 ↦ X1`, `x2 ↦ X2`, `x3 ↦ X3⁻¹`.
    pub fn evaluate(&self, rep: &RepTriple) -> Mat2 {
        let images = [rep.x1, rep.x2, rep.x3.inv()];
        let inverses = [rep.x1.inv(), rep.x2.inv(), rep.x3];
        self.letters.iter().fold(Mat2::identity(), |acc, l| {
            let i = (l.gen - 1) as usize;
            acc * if l.exp > 0 { images[i] } else { inverses[i] }
        })
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| if l.exp > 0 { format!("x{}", l.gen) } else { format!("x{}^-1", l.gen) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// The preferred longitude
/// `(x1x2⁻¹)^-k3 (x3⁻¹x1⁻¹)^k2 (x2x3)^(-k1-1) (x1x2⁻¹)^k3 (x2x3)^-k1 (x3⁻¹x1⁻¹)^(k2+1)`,
/// whose image is `Y3^-k3 Y2^k2 Y1^(-k1-1) Y3^k3 Y1^-k1 Y2^(k2+1)`.
pub fn longitude_word(params: PretzelParams) -> GroupWord {
    let g = GroupWord::gen;
    let a = g(1, 1).mul(&g(2, -1));
    let b = g(3, -1).mul(&g(1, -1));
    let c = g(2, 1).mul(&g(3, 1));
    let PretzelParams { k1, k2, k3 } = params;
    [a.pow(-k3), b.pow(k2), c.pow(-k1 - 1), a.pow(k3), c.pow(-k1), b.pow(k2 + 1)]
        .iter()
        .fold(GroupWord::identity(), |acc, w| acc.mul(w))
}

pub fn evaluate_word(word: &GroupWord, rep: &RepTriple) -> Mat2 {
    word.evaluate(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::power_via_omega;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_longitude() {
        let w = longitude_word(PretzelParams::new(0, 0, 1).unwrap());
        assert_eq!(w.len(), 8);
        assert_eq!(w.to_string(), "x2 x1^-1 x3^-1 x2^-1 x1 x2^-1 x3^-1 x1^-1");
        assert_eq!(w.abelianized_exponent(), 0);
    }

    #[test]
    fn longitude_in_commutator_subgroup() {
        for k1 in 0..3 {
            for k2 in 0..3 {
                for k3 in 1..4 {
                    let w = longitude_word(PretzelParams::new(k1, k2, k3).unwrap());
                    assert_eq!(w.abelianized_exponent(), 0);
                }
            }
        }
    }

    #[test]
    fn word_image_matches_y_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let params = PretzelParams::new(1, 2, 2).unwrap();
        let rep = RepTriple::new(params, Mat2::random_sl2(&mut rng), Mat2::random_sl2(&mut rng), Mat2::random_sl2(&mut rng));
        let p = |j: usize, k: i64| power_via_omega(&rep.y(j), k);
        let expected = p(3, -2) * p(2, 2) * p(1, -2) * p(3, 2) * p(1, -1) * p(2, 3);
        let got = longitude_word(params).evaluate(&rep);
        assert!((got - expected).max_norm() < 1e-8 * expected.max_norm().max(1.0));
    }

    #[test]
    fn free_reduction() {
        let w = GroupWord::gen(1, 1).mul(&GroupWord::gen(1, -1));
        assert!(w.is_empty());
        assert_eq!(GroupWord::gen(2, 1).pow(-2).to_string(), "x2^-1 x2^-1");
    }
}
