use std::fmt;

use super::{PolyError, Polynomial};

/// Row-major matrix of polynomials sharing one ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self, PolyError> {
        if entries.len() != rows * cols {
            return Err(PolyError::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        let nvars = entries.first().map_or(0, Polynomial::nvars);
        if entries.iter().any(|p| p.nvars() != nvars) {
            return Err(PolyError::RingMismatch);
        }
        Ok(PolyMatrix { rows, cols, nvars, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(PolyError::DimensionMismatch { expected: c, found: rows.iter().map(Vec::len).find(|&l| l != c).unwrap_or(c) });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix { rows, cols, nvars, entries: vec![Polynomial::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one(nvars);
        }
        m
    }

    pub fn diagonal(diag: Vec<Polynomial>) -> Result<Self, PolyError> {
        let n = diag.len();
        let nvars = diag.first().map_or(0, Polynomial::nvars);
        let mut m = Self::zeros(n, n, nvars);
        for (i, p) in diag.into_iter().enumerate() {
            if p.nvars() != nvars {
                return Err(PolyError::RingMismatch);
            }
            m.entries[i * n + i] = p;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        let entries: Vec<Polynomial> = self.entries.iter().map(f).collect();
        let nvars = entries.first().map_or(self.nvars, Polynomial::nvars);
        PolyMatrix { rows: self.rows, cols: self.cols, nvars, entries }
    }

    pub fn trace(&self) -> Polynomial {
        (0..self.rows.min(self.cols)).fold(Polynomial::zero(self.nvars), |acc, i| acc + self.get(i, i))
    }

    pub fn mul_vec(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Polynomial::zero(self.nvars), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<PolyMatrix, PolyError> {
        for &r in rows {
            if r >= self.rows {
                return Err(PolyError::IndexOutOfRange { index: r, bound: self.rows });
            }
        }
        for &c in cols {
            if c >= self.cols {
                return Err(PolyError::IndexOutOfRange { index: c, bound: self.cols });
            }
        }
        let entries = rows.iter().flat_map(|&r| cols.iter().map(move |&c| (r, c))).map(|(r, c)| self.get(r, c).clone()).collect();
        Ok(PolyMatrix { rows: rows.len(), cols: cols.len(), nvars: self.nvars, entries })
    }

    /// Determinant of the `rows × cols` submatrix.
    pub fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial, PolyError> {
        if rows.len() != cols.len() {
            return Err(PolyError::DimensionMismatch { expected: rows.len(), found: cols.len() });
        }
        Ok(self.submatrix(rows, cols)?.determinant())
    }

    /// Determinant: fraction-free Bareiss elimination up to size 4,
    /// Laplace expansion along the first row beyond.
    pub fn determinant(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        match self.rows {
            0 => Polynomial::one(self.nvars),
            1 => self.entries[0].clone(),
            n if n <= 4 => self.bareiss(),
            _ => self.cofactor_determinant(),
        }
    }

    fn bareiss(&self) -> Polynomial {
        let n = self.rows;
        let mut m: Vec<Vec<Polynomial>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign_flip = false;
        let mut prev = Polynomial::one(self.nvars);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Polynomial::zero(self.nvars);
                };
                m.swap(k, p);
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign_flip {
            -det
        } else {
            det
        }
    }

    /// Laplace expansion along the first row.
    pub fn cofactor_determinant(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Polynomial::one(self.nvars);
        }
        if n == 1 {
            return self.entries[0].clone();
        }
        let rest: Vec<usize> = (1..n).collect();
        let mut acc = Polynomial::zero(self.nvars);
        for j in 0..n {
            let a = self.get(0, j);
            if a.is_zero() {
                continue;
            }
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = self.submatrix(&rest, &cols).expect("in range").cofactor_determinant();
            let term = a * &minor;
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    /// Classical adjugate, `adj(M)·M = det(M)·1`.
    pub fn adjugate(&self) -> PolyMatrix {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut adj = Self::zeros(n, n, self.nvars);
        if n == 1 {
            adj.entries[0] = Polynomial::one(self.nvars);
            return adj;
        }
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let m = self.minor_det(&rows, &cols).expect("in range");
                adj.set(i, j, if (i + j) % 2 == 0 { m } else { -m });
            }
        }
        adj
    }

    pub fn display_with<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        MatrixDisplay { m: self, vars }
    }
}

struct MatrixDisplay<'a> {
    m: &'a PolyMatrix,
    vars: &'a [String],
}

impl fmt::Display for MatrixDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.m.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.m.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.m.get(i, j).display_with(self.vars))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("z{i}")).collect();
        let shown = self.display_with(&names).to_string();
        f.write_str(&shown)
    }
}

/// Matrix of partial derivatives `∂f_i/∂z_j`.
pub fn jacobian(fs: &[Polynomial], nvars: usize) -> PolyMatrix {
    let entries = fs.iter().flat_map(|f| (0..nvars).map(move |j| f.derivative(j))).collect();
    PolyMatrix { rows: fs.len(), cols: nvars, nvars, entries }
}
