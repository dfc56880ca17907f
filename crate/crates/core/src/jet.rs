//! Forward-mode automatic differentiation on the shape torus.
//!
//! [`Jet`] is a truncated bivariate Taylor polynomial in the two shape
//! displacements (d1, d2) around an evaluation point, with a runtime order
//! cap. Threading jets through the drag/Jacobian/linear-solve pipeline gives
//! partial derivatives of the connection that are exact to machine
//! precision, with no step-size choice; nested finite differences lose about
//! eight digits by the second derivative, which the controllability
//! filtration cannot afford.
//!
//! Order 1 yields first partials, order 2 second partials, and order n
//! whatever a depth-(n+1) filtration needs. The [`Scalar`] trait lets the
//! same pipeline code run on plain `f64` when no derivatives are wanted.

/// Arithmetic shared by `f64` and [`Jet`], enough to express the whole
/// resistive-force pipeline including the pivoted linear solve.
pub trait Scalar: Clone {
    /// Constant (zeroth-order) part; used for pivot selection and checks.
    fn value(&self) -> f64;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiply by a plain constant.
    fn scale(&self, k: f64) -> Self;
    /// Add a plain constant.
    fn shift(&self, k: f64) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    /// Additive zero of the same shape (same truncation order).
    fn zero_like(&self) -> Self;
}

impl Scalar for f64 {
    fn value(&self) -> f64 {
        *self
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, k: f64) -> Self {
        self * k
    }
    fn shift(&self, k: f64) -> Self {
        self + k
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn zero_like(&self) -> Self {
        0.0
    }
}

/// Number of coefficients of a bivariate polynomial truncated at total
/// degree `ord`.
fn len(ord: usize) -> usize {
    (ord + 1) * (ord + 2) / 2
}

/// Coefficient index for d1^i d2^j, stored by total degree.
fn idx(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// Truncated bivariate Taylor polynomial; coefficient of d1^i d2^j at
/// [`idx`]`(i, j)` for i + j <= ord.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    ord: usize,
    c: Vec<f64>,
}

impl Jet {
    pub fn constant(v: f64, ord: usize) -> Jet {
        let mut c = vec![0.0; len(ord)];
        c[0] = v;
        Jet { ord, c }
    }

    /// Seed for the `axis`-th shape coordinate (0 or 1): value plus the
    /// matching first-order displacement.
    pub fn variable(v: f64, axis: usize, ord: usize) -> Jet {
        assert!(axis < 2);
        let mut j = Jet::constant(v, ord);
        if ord >= 1 {
            j.c[idx(1 - axis, axis)] = 1.0;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.ord
    }

    /// Coefficient of d1^i d2^j. This is the mixed partial divided by i!j!.
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i + j <= self.ord {
            self.c[idx(i, j)]
        } else {
            0.0
        }
    }

    /// First partial with respect to axis 0 or 1, as a jet one order lower.
    pub fn diff(&self, axis: usize) -> Jet {
        assert!(self.ord >= 1, "cannot differentiate an order-0 jet");
        let ord = self.ord - 1;
        let mut c = vec![0.0; len(ord)];
        for d in 0..=ord {
            for j in 0..=d {
                let i = d - j;
                c[idx(i, j)] = if axis == 0 {
                    (i + 1) as f64 * self.c[idx(i + 1, j)]
                } else {
                    (j + 1) as f64 * self.c[idx(i, j + 1)]
                };
            }
        }
        Jet { ord, c }
    }

    /// Drop coefficients above `ord`.
    pub fn truncated(&self, ord: usize) -> Jet {
        assert!(ord <= self.ord);
        Jet {
            ord,
            c: self.c[..len(ord)].to_vec(),
        }
    }

    fn binary<F: Fn(f64, f64) -> f64>(&self, o: &Jet, f: F) -> Jet {
        assert_eq!(self.ord, o.ord, "jet order mismatch");
        Jet {
            ord: self.ord,
            c: self
                .c
                .iter()
                .zip(o.c.iter())
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    fn reciprocal(&self) -> Jet {
        let b0 = self.c[0];
        assert!(b0 != 0.0, "jet reciprocal of zero constant part");
        let mut r = vec![0.0; len(self.ord)];
        r[0] = 1.0 / b0;
        for d in 1..=self.ord {
            for j in 0..=d {
                let i = d - j;
                let mut acc = 0.0;
                // sum over (p, q) <= (i, j), (p, q) != (i, j)
                for p in 0..=i {
                    for q in 0..=j {
                        if p == i && q == j {
                            continue;
                        }
                        acc += r[idx(p, q)] * self.c[idx(i - p, j - q)];
                    }
                }
                r[idx(i, j)] = -acc / b0;
            }
        }
        Jet { ord: self.ord, c: r }
    }

    /// sin and cos of the nilpotent part g = self - value, by finite Taylor
    /// sums, combined with the angle-addition formulas.
    fn sin_cos(&self) -> (Jet, Jet) {
        let v = self.c[0];
        let (sv, cv) = v.sin_cos();
        let mut g = self.clone();
        g.c[0] = 0.0;
        // powers of g up to ord
        let mut sin_g = Jet::constant(0.0, self.ord);
        let mut cos_g = Jet::constant(1.0, self.ord);
        let mut pw = Jet::constant(1.0, self.ord);
        let mut fact = 1.0;
        for n in 1..=self.ord {
            pw = pw.mul(&g);
            fact *= n as f64;
            let term = pw.scale(1.0 / fact);
            match n % 4 {
                1 => sin_g = sin_g.add(&term),
                2 => cos_g = cos_g.sub(&term),
                3 => sin_g = sin_g.sub(&term),
                _ => cos_g = cos_g.add(&term),
            }
        }
        (
            sin_g.scale(cv).add(&cos_g.scale(sv)),
            cos_g.scale(cv).sub(&sin_g.scale(sv)),
        )
    }
}

impl Scalar for Jet {
    fn value(&self) -> f64 {
        self.c[0]
    }

    fn add(&self, o: &Self) -> Self {
        self.binary(o, |a, b| a + b)
    }

    fn sub(&self, o: &Self) -> Self {
        self.binary(o, |a, b| a - b)
    }

    fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.ord, o.ord, "jet order mismatch");
        let mut c = vec![0.0; len(self.ord)];
        for d1 in 0..=self.ord {
            for j1 in 0..=d1 {
                let i1 = d1 - j1;
                let a = self.c[idx(i1, j1)];
                if a == 0.0 {
                    continue;
                }
                for d2 in 0..=(self.ord - d1) {
                    for j2 in 0..=d2 {
                        let i2 = d2 - j2;
                        c[idx(i1 + i2, j1 + j2)] += a * o.c[idx(i2, j2)];
                    }
                }
            }
        }
        Jet { ord: self.ord, c }
    }

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.reciprocal())
    }

    fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    fn scale(&self, k: f64) -> Self {
        Jet {
            ord: self.ord,
            c: self.c.iter().map(|a| a * k).collect(),
        }
    }

    fn shift(&self, k: f64) -> Self {
        let mut j = self.clone();
        j.c[0] += k;
        j
    }

    fn sin(&self) -> Self {
        self.sin_cos().0
    }

    fn cos(&self) -> Self {
        self.sin_cos().1
    }

    fn zero_like(&self) -> Self {
        Jet::constant(0.0, self.ord)
    }
}
