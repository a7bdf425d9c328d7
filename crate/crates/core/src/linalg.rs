//! Dense matrices over exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Q = Ratio<i128>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n as i128)
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(n as i128, d as i128)
}

fn to_big(x: &Q) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

fn from_big(x: &BigRational) -> Q {
    let n = x.numer().to_i128().expect("numerator overflow");
    let d = x.denom().to_i128().expect("denominator overflow");
    Q::new(n, d)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
        Matrix::from_rows(&rows)
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> Vec<Q> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        s += self.get(i, j) * x;
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(-Q::one()))
    }

    pub fn scale(&self, c: Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    /// Block-diagonal placement of `block` at (r0, c0).
    pub fn place(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        m
    }

    pub fn direct_sum(blocks: &[Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.place(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        m
    }

    pub fn to_int_rows(&self) -> Option<Vec<Vec<i64>>> {
        if !self.is_integral() {
            return None;
        }
        Some((0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_integer() as i64).collect()).collect())
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect()
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&(0..self.rows).map(|i| self.row(i)).collect::<Vec<_>>(), self.cols)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        let mut out = Vec::new();
        for r in rows {
            let mut row = Vec::new();
            for v in r {
                row.push(parse_q(&v).map_err(serde::de::Error::custom)?);
            }
            out.push(row);
        }
        Ok(Matrix::from_rows(&out))
    }
}

pub fn parse_q(v: &serde_json::Value) -> Result<Q, String> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(q).ok_or_else(|| format!("not an integer: {n}")),
        serde_json::Value::String(s) => {
            let s = s.trim();
            if let Some((a, b)) = s.split_once('/') {
                let a: i128 = a.trim().parse().map_err(|_| format!("bad rational {s}"))?;
                let b: i128 = b.trim().parse().map_err(|_| format!("bad rational {s}"))?;
                if b == 0 {
                    return Err(format!("zero denominator in {s}"));
                }
                Ok(Q::new(a, b))
            } else {
                s.parse::<i128>().map(Q::from_integer).map_err(|_| format!("bad rational {s}"))
            }
        }
        other => Err(format!("expected number, got {other}")),
    }
}

fn clear_denominators(row: &[Q]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in row {
        let d = BigInt::from(*x.denom());
        l = l.lcm(&d);
    }
    row.iter().map(|x| BigInt::from(*x.numer()) * (&l / BigInt::from(*x.denom()))).collect()
}

/// Rank by fraction-free (Bareiss) elimination on the integer-scaled rows.
pub fn rank_of_rows(rows: &[Vec<Q>], cols: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    let n = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in rank + 1..n {
            for j in c + 1..cols {
                let v = (&m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Incrementally maintained row space in reduced echelon form.
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace { cols, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.cols
    }

    fn reduce_big(&self, v: &mut [BigRational]) {
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for j in 0..self.cols {
                    if !r[j].is_zero() {
                        v[j] = &v[j] - &c * &r[j];
                    }
                }
            }
        }
    }

    /// Inserts `v`; returns true if the space grew.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut w: Vec<BigRational> = v.iter().map(to_big).collect();
        self.reduce_big(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else { return false };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x = &*x * &inv;
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let c = r[p].clone();
                for j in 0..self.cols {
                    if !w[j].is_zero() {
                        r[j] = &r[j] - &c * &w[j];
                    }
                }
            }
        }
        self.rows.push((p, w));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w: Vec<BigRational> = v.iter().map(to_big).collect();
        self.reduce_big(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn basis(&self) -> Vec<Vec<Q>> {
        self.rows.iter().map(|(_, r)| r.iter().map(from_big).collect()).collect()
    }

    /// Coordinates outside the pivot set; a basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        let piv = self.pivots();
        (0..self.cols).filter(|c| !piv.contains(c)).collect()
    }

    /// Matrix of the projection onto ambient/self in the free-column basis.
    pub fn quotient_projection(&self) -> Matrix {
        let free = self.free_columns();
        let mut m = Matrix::zeros(free.len(), self.cols);
        for j in 0..self.cols {
            let mut e = vec![BigRational::zero(); self.cols];
            e[j] = BigRational::one();
            self.reduce_big(&mut e);
            for (i, &f) in free.iter().enumerate() {
                m.set(i, j, from_big(&e[f]));
            }
        }
        m
    }

    /// Inclusion of the free-column basis back into the ambient space.
    pub fn quotient_lift(&self) -> Matrix {
        let free = self.free_columns();
        let mut m = Matrix::zeros(self.cols, free.len());
        for (i, &f) in free.iter().enumerate() {
            m.set(f, i, Q::one());
        }
        m
    }
}

/// Solves X·a = b for X (a: k×n, b: m×n) if a solution exists.
pub fn solve_left(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    // transpose: aᵀ Xᵀ = bᵀ
    let at = a.transpose();
    let bt = b.transpose();
    solve_right(&at, &bt).map(|x| x.transpose())
}

/// Solves a·X = b for X if a solution exists.
pub fn solve_right(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let (n, k) = (a.rows, a.cols);
    let m = b.cols;
    assert_eq!(b.rows, n);
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> = a.row(i).iter().map(to_big).collect();
            r.extend(b.row(i).iter().map(to_big));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !aug[i][c].is_zero()) else { continue };
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..k + m {
                    let v = &aug[i][j] - &f * &aug[r][j];
                    aug[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    for row in aug.iter().skip(r) {
        if row[k..].iter().any(|x| !x.is_zero()) {
            return None;
        }
    }
    let mut x = Matrix::zeros(k, m);
    for (i, &c) in pivots.iter().enumerate() {
        for j in 0..m {
            x.set(c, j, from_big(&aug[i][k + j]));
        }
    }
    Some(x)
}

/// Invariant factors of an integer matrix (nonzero diagonal of its Smith form).
pub fn smith_invariants(m: &Matrix) -> Option<Vec<BigInt>> {
    if !m.is_integral() {
        return None;
    }
    let mut a: Vec<Vec<BigInt>> =
        (0..m.rows).map(|i| m.row(i).iter().map(|x| BigInt::from(x.to_integer())).collect()).collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let f = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let v = &a[i][j] - &f * &a[t][j];
                        a[i][j] = v;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let f = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let v = &row[j] - &f * &row[t];
                        row[j] = v;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if !dirty {
                // divisibility fix-up
                let mut fix = None;
                'outer: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !(&a[i][j] % &a[t][t]).is_zero() {
                            fix = Some(i);
                            break 'outer;
                        }
                    }
                }
                match fix {
                    Some(i) => {
                        for j in t..cols {
                            let v = &a[t][j] + &a[i][j];
                            a[t][j] = v;
                        }
                    }
                    None => break,
                }
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_small() {
        let m = Matrix::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(Matrix::identity(4).rank(), 4);
        assert_eq!(Matrix::zeros(3, 2).rank(), 0);
    }

    #[test]
    fn solve_roundtrip() {
        let a = Matrix::from_int_rows(&[vec![2, 1], vec![1, 1]]);
        let x = Matrix::from_int_rows(&[vec![1, -3], vec![4, 2]]);
        let b = a.mul(&x);
        assert_eq!(solve_right(&a, &b).unwrap(), x);
        let y = solve_left(&a, &x.mul(&a)).unwrap();
        assert_eq!(y, x);
        let sing = Matrix::from_int_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(solve_right(&sing, &Matrix::from_int_rows(&[vec![1], vec![0]])).is_none());
    }

    #[test]
    fn quotient_projection_kills_subspace() {
        let mut s = RowSpace::new(3);
        s.insert(&[q(1), q(-1), q(0)]);
        let p = s.quotient_projection();
        assert_eq!(p.rows(), 2);
        assert!(p.apply(&[q(1), q(-1), q(0)]).iter().all(|x| x.is_zero()));
        assert_eq!(p.mul(&s.quotient_lift()), Matrix::identity(2));
    }

    #[test]
    fn smith_of_diagonalizable() {
        let m = Matrix::from_int_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let inv = smith_invariants(&m).unwrap();
        let v: Vec<i64> = inv.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(v, vec![2, 6, 12]);
    }
}
