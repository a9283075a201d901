use rayon::prelude::*;

use super::{MultiPoly, PolyError};

/// Sylvester matrix of `p` and `q` as polynomials in `var`. Rows hold the
/// coefficients from the highest degree down; `deg q` shifted copies of `p`
/// come first.
pub fn sylvester_matrix(p: &MultiPoly, q: &MultiPoly, var: &str) -> Vec<Vec<MultiPoly>> {
    let pc = p.coefficients_in(var);
    let qc = q.coefficients_in(var);
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, shifts) in [(&pc, n), (&qc, m)] {
        for s in 0..shifts {
            let mut row = vec![MultiPoly::zero(); size];
            for (i, c) in src.iter().rev().enumerate() {
                row[s + i] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant by fraction-free (Bareiss) elimination; every division is exact.
pub fn determinant(matrix: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = matrix.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut m: Vec<Vec<MultiPoly>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        // smallest nonzero pivot keeps intermediate products small
        let Some(pivot_row) = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].num_terms())
        else {
            return MultiPoly::zero();
        };
        if pivot_row != k {
            m.swap(pivot_row, k);
            negate = !negate;
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_line = &top[k];
        let pivot = &pivot_line[k];
        bottom.par_iter_mut().for_each(|row| {
            let lead = row[k].clone();
            for j in k + 1..n {
                let a = pivot * &row[j];
                let updated = if lead.is_zero() || pivot_line[j].is_zero() {
                    a
                } else {
                    &a - &(&lead * &pivot_line[j])
                };
                row[j] = updated.div_exact(&prev).expect("Bareiss division is exact");
            }
            row[k] = MultiPoly::zero();
        });
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant of `p` and `q` with respect to `var`, exact over the remaining variables.
pub fn resultant_uni(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly, PolyError> {
    super::modular::resultant_modular(p, q, var)
}

/// Sylvester determinant by Bareiss elimination. Independent of the modular
/// code path and much slower.
pub fn resultant_bareiss(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly, PolyError> {
    if p.degree_in(var) == 0 || q.degree_in(var) == 0 {
        return Err(PolyError::DegreeZero { var: var.to_string() });
    }
    Ok(determinant(&sylvester_matrix(p, q, var)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant_uni(&p("x^2-2"), &p("x-y"), "x").unwrap(), p("y^2-2"));
        assert_eq!(resultant_uni(&p("x^2+a*x+1"), &p("x^2+b*x+1"), "x").unwrap(), p("(a-b)^2"));
        assert_eq!(resultant_uni(&p("x-1"), &p("x+1"), "x").unwrap(), p("2"));
    }

    #[test]
    fn resultant_requires_positive_degree() {
        let err = resultant_uni(&p("y+1"), &p("x+1"), "x").unwrap_err();
        assert_eq!(err, PolyError::DegreeZero { var: "x".into() });
    }

    #[test]
    fn determinant_small() {
        let m = vec![
            vec![p("a"), p("b"), p("0")],
            vec![p("0"), p("a"), p("b")],
            vec![p("1"), p("0"), p("1")],
        ];
        // cofactor expansion along the first row
        assert_eq!(determinant(&m), p("a^2 + b^2"));
        let z = vec![vec![p("0"), p("x")], vec![p("0"), p("y")]];
        assert!(determinant(&z).is_zero());
    }
}
