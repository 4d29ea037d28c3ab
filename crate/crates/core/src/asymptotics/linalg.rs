use crate::error::{Error, Result};
use crate::ring::Analytic;

/// LU factorisation with partial pivoting on the value slot.
pub struct Lu<T> {
    a: Vec<Vec<T>>,
    perm: Vec<usize>,
    sign: i64,
}

impl<T: Analytic> Lu<T> {
    pub fn new(mut a: Vec<Vec<T>>) -> Result<Self> {
        let n = a.len();
        if a.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| {
                    a[i][k]
                        .value_f64()
                        .abs()
                        .total_cmp(&a[j][k].value_f64().abs())
                })
                .expect("nonempty pivot range");
            if p != k {
                a.swap(p, k);
                perm.swap(p, k);
                sign = -sign;
            }
            // The last pivot is never inverted, so a singular matrix still
            // gets a determinant (with its full gradient in dual rings).
            if k + 1 == n {
                break;
            }
            if a[k][k].value_f64() == 0.0 || !a[k][k].value_f64().is_finite() {
                return Err(Error::SingularMatrix(k));
            }
            let inv = a[k][k].inv().ok_or(Error::SingularMatrix(k))?;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone() * &inv;
                for j in k + 1..n {
                    let t = f.clone() * &a[k][j];
                    a[i][j] = a[i][j].clone() - t;
                }
                a[i][k] = f;
            }
        }
        Ok(Lu { a, perm, sign })
    }

    pub fn det(&self) -> T {
        let mut d = T::from_i64(self.sign);
        for (k, row) in self.a.iter().enumerate() {
            d = d * &row[k];
        }
        d
    }

    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        let n = self.a.len();
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            for j in 0..i {
                let t = self.a[i][j].clone() * &x[j];
                x[i] = x[i].clone() - t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = self.a[i][j].clone() * &x[j];
                x[i] = x[i].clone() - t;
            }
            if self.a[i][i].value_f64() == 0.0 {
                return Err(Error::SingularMatrix(i));
            }
            x[i] = x[i].checked_div(&self.a[i][i]).ok_or(Error::SingularMatrix(i))?;
        }
        Ok(x)
    }
}

pub fn determinant<T: Analytic>(a: Vec<Vec<T>>) -> Result<T> {
    if a.is_empty() {
        return Ok(T::one());
    }
    match Lu::new(a) {
        Ok(lu) => Ok(lu.det()),
        Err(Error::SingularMatrix(_)) => Ok(T::zero()),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_det() {
        let a = vec![
            vec![0.0, 2.0, 1.0],
            vec![1.0, 1.0, 0.0],
            vec![3.0, 0.0, 1.0],
        ];
        let lu = Lu::new(a.clone()).unwrap();
        assert!((lu.det() - (-5.0)).abs() < 1e-12);
        let x = lu.solve(&[3.0, 2.0, 4.0]).unwrap();
        for (row, b) in a.iter().zip([3.0, 2.0, 4.0]) {
            let got: f64 = row.iter().zip(&x).map(|(a, x)| a * x).sum();
            assert!((got - b).abs() < 1e-12);
        }
        assert_eq!(determinant(vec![vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap(), 0.0);
    }
}
