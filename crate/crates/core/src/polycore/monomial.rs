use std::cmp::Ordering;

/// Global variable order. Names outside this list sort after it, alphabetically.
pub const CANONICAL_VARS: [&str; 8] = ["u", "w", "t", "s1", "s2", "s3", "lambda", "tau"];

fn rank(name: &str) -> usize {
    CANONICAL_VARS
        .iter()
        .position(|v| *v == name)
        .unwrap_or(CANONICAL_VARS.len())
}

/// Canonical comparison of two variable names.
pub fn compare_vars(a: &str, b: &str) -> Ordering {
    rank(a).cmp(&rank(b)).then_with(|| a.cmp(b))
}

/// Exponent vector aligned with a polynomial's variable list, ordered by
/// graded lexicographic order (total degree first, then the earliest
/// variable with a differing exponent decides).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        // u^2 > u*w > w^2 > u > w > 1
        let m = |a, b| Monomial(vec![a, b]);
        let mut v = vec![m(0, 0), m(0, 1), m(1, 0), m(0, 2), m(1, 1), m(2, 0)];
        v.sort();
        assert_eq!(v, vec![m(0, 0), m(0, 1), m(1, 0), m(0, 2), m(1, 1), m(2, 0)]);
    }

    #[test]
    fn canonical_var_order() {
        let mut names = vec!["tau", "x", "s1", "u", "lambda", "a", "w"];
        names.sort_by(|a, b| compare_vars(a, b));
        assert_eq!(names, vec!["u", "w", "s1", "lambda", "tau", "a", "x"]);
    }
}
