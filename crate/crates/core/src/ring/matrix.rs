use num_traits::Zero;

use super::coeff::{Coeff, GaussInt};
use super::poly::{LaurentPoly, Vars};
use super::quat::QuatLaurent;
use super::RingError;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> RingMatrix<T> {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RingMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, RingError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(RingError::Ragged);
        }
        Ok(RingMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Deletes row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        Self::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            let i = if i >= r { i + 1 } else { i };
            let j = if j >= c { j + 1 } else { j };
            self.get(i, j).clone()
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> RingMatrix<U> {
        RingMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

pub type PolyMatrix<C> = RingMatrix<LaurentPoly<C>>;

impl<C: Coeff> RingMatrix<LaurentPoly<C>> {
    pub fn identity(n: usize, vars: &Vars) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                LaurentPoly::one(vars)
            } else {
                LaurentPoly::zero(vars)
            }
        })
    }

    pub fn mul(&self, o: &Self) -> Result<Self, RingError> {
        if self.cols != o.rows {
            return Err(RingError::Shape { rows: o.rows, cols: self.cols });
        }
        let vars = self.vars_or(o)?;
        Ok(Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = LaurentPoly::zero(&vars);
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * o.get(k, j));
            }
            acc
        }))
    }

    fn vars_or(&self, o: &Self) -> Result<Vars, RingError> {
        self.data
            .first()
            .or(o.data.first())
            .map(|p| p.vars().clone())
            .ok_or(RingError::Empty)
    }
}

/// Determinant by fraction-free (Bareiss) elimination; every division is exact.
pub fn bareiss_det<C: Coeff>(m: &PolyMatrix<C>) -> Result<LaurentPoly<C>, RingError> {
    if !m.is_square() {
        return Err(RingError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let vars = m.data.first().map(|p| p.vars().clone()).ok_or(RingError::Empty)?;
    let mut a: Vec<Vec<LaurentPoly<C>>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = LaurentPoly::one(&vars);
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(LaurentPoly::zero(&vars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).ok_or(RingError::InexactDivision)?;
            }
            a[i][k] = LaurentPoly::zero(&vars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_det<C: Coeff>(m: &PolyMatrix<C>) -> Result<LaurentPoly<C>, RingError> {
    if !m.is_square() {
        return Err(RingError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let vars = m.data.first().map(|p| p.vars().clone()).ok_or(RingError::Empty)?;
    if m.rows == 1 {
        return Ok(m.get(0, 0).clone());
    }
    let mut acc = LaurentPoly::zero(&vars);
    for j in 0..m.cols {
        let term = m.get(0, j) * &cofactor_det(&m.minor(0, j))?;
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    Ok(acc)
}

/// Embeds `a + bi + cj + dk` as `[[a + b*I, c + d*I], [-c + d*I, a - b*I]]`.
pub fn quat_to_complex(q: &QuatLaurent) -> [[LaurentPoly<GaussInt>; 2]; 2] {
    let lift = |p: &LaurentPoly<num_bigint::BigInt>, im: bool| {
        p.map_coeffs(|c| if im { GaussInt { re: Zero::zero(), im: c.clone() } } else { GaussInt::from(c.clone()) })
    };
    let (a, b, c, d) = (q.re(), q.i(), q.j(), q.k());
    [
        [&lift(a, false) + &lift(b, true), &lift(c, false) + &lift(d, true)],
        [&(-&lift(c, false)) + &lift(d, true), &lift(a, false) - &lift(b, true)],
    ]
}

/// Study determinant: the ordinary determinant of the 2n×2n complex embedding.
pub fn study_det(m: &RingMatrix<QuatLaurent>) -> Result<LaurentPoly<GaussInt>, RingError> {
    bareiss_det(&complex_embedding(m)?)
}

pub fn complex_embedding(m: &RingMatrix<QuatLaurent>) -> Result<PolyMatrix<GaussInt>, RingError> {
    if !m.is_square() {
        return Err(RingError::NotSquare { rows: m.rows, cols: m.cols });
    }
    if m.rows == 0 {
        return Err(RingError::Empty);
    }
    let blocks: Vec<_> = m.data.iter().map(quat_to_complex).collect();
    let n = m.cols;
    Ok(RingMatrix::from_fn(2 * n, 2 * n, |i, j| blocks[(i / 2) * n + j / 2][i % 2][j % 2].clone()))
}

impl RingMatrix<QuatLaurent> {
    pub fn identity_quat(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { QuatLaurent::one() } else { QuatLaurent::zero() })
    }

    pub fn mul_quat(&self, o: &Self) -> Result<Self, RingError> {
        if self.cols != o.rows {
            return Err(RingError::Shape { rows: o.rows, cols: self.cols });
        }
        Ok(Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = QuatLaurent::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * o.get(k, j));
            }
            acc
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = LaurentPoly<BigInt>;

    #[test]
    fn small_determinants() {
        let v = Vars::new(&["s", "t"]);
        let id = PolyMatrix::<BigInt>::identity(3, &v);
        assert!(bareiss_det(&id).unwrap().is_one());
        let swap = RingMatrix::from_rows(vec![
            vec![P::zero(&v), P::one(&v)],
            vec![P::one(&v), P::zero(&v)],
        ])
        .unwrap();
        assert_eq!(bareiss_det(&swap).unwrap(), P::from_i64(&v, -1));
        let s = P::var(&v, "s");
        let t = P::var(&v, "t");
        let one_st = &P::one(&v) - &(&s * &t);
        let m = RingMatrix::from_rows(vec![vec![t.clone(), one_st.clone()], vec![s.clone(), P::zero(&v)]]).unwrap();
        assert_eq!(bareiss_det(&m).unwrap(), -(&s * &one_st));
        assert!(matches!(
            bareiss_det(&RingMatrix::from_fn(2, 3, |_, _| P::one(&v))),
            Err(RingError::NotSquare { .. })
        ));
    }

    #[test]
    fn study_det_of_units() {
        let one_i = QuatLaurent::from_ints(1, 1, 0, 0);
        let m = RingMatrix::from_rows(vec![vec![one_i]]).unwrap();
        assert_eq!(study_det(&m).unwrap().render(), "2");
        let jt = QuatLaurent::jt_pow(1);
        let m = RingMatrix::from_rows(vec![vec![jt]]).unwrap();
        assert_eq!(study_det(&m).unwrap().render(), "t^2");
        assert!(study_det(&RingMatrix::identity_quat(3)).unwrap().is_one());
    }
}
