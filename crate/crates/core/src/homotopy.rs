//! 2-term 3-Lie∞ algebras, their homomorphisms and 2-homomorphisms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::skew::{combinations, tuples};
use crate::exactlin::{vector, Block, BlockTensor, Matrix, Scalar, Vector};
use crate::report::VerificationReport;
use crate::trilie::{action_blocks, bracket_blocks, labelled, ThreeLieAlgebra};

/// An element of a single degree of `V = V0 ⊕ V1`. Degrees outside
/// `{0, 1}` carry no coordinates: the space there is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graded {
    pub degree: i32,
    pub coords: Vector,
}

impl Graded {
    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.coords)
    }

    /// `self += c · other`; both must have the same degree.
    pub fn axpy(&mut self, c: &Scalar, other: &Graded) {
        debug_assert_eq!(self.degree, other.degree);
        vector::axpy(&mut self.coords, c, &other.coords);
    }

    pub fn plus(mut self, other: &Graded) -> Graded {
        self.axpy(&Scalar::one(), other);
        self
    }

    pub fn minus(mut self, other: &Graded) -> Graded {
        self.axpy(&-Scalar::one(), other);
        self
    }
}

pub fn l5_blocks(n: usize) -> Vec<Block> {
    vec![Block::Skew { dim: n, arity: 2 }, Block::Skew { dim: n, arity: 3 }]
}

/// A 2-term 3-Lie∞ algebra `V1 --d--> V0` with brackets `l3` and `l5`.
///
/// `l3` is stored on `V0³ → V0` and `V0² × V1 → V1`; its components with two
/// or more `V1` arguments vanish and are not stored. `l5` is skew in its
/// first two and in its last three arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThreeLie2Algebra {
    labels0: Vec<String>,
    labels1: Vec<String>,
    d: Matrix,
    l3_000: BlockTensor,
    l3_001: BlockTensor,
    l5: BlockTensor,
}

impl ThreeLie2Algebra {
    /// The algebra with `d = 0` and all brackets zero.
    pub fn zero(labels0: Vec<String>, labels1: Vec<String>) -> Self {
        let (n0, n1) = (labels0.len(), labels1.len());
        ThreeLie2Algebra {
            d: Matrix::zeros(n0, n1),
            l3_000: BlockTensor::zeros(bracket_blocks(n0), n0),
            l3_001: BlockTensor::zeros(action_blocks(n0, n1), n1),
            l5: BlockTensor::zeros(l5_blocks(n0), n1),
            labels0,
            labels1,
        }
    }

    pub fn new(
        labels0: Vec<String>,
        labels1: Vec<String>,
        d: Matrix,
        l3_000: BlockTensor,
        l3_001: BlockTensor,
        l5: BlockTensor,
    ) -> Result<Self> {
        let shape = ThreeLie2Algebra::zero(labels0, labels1);
        let (n0, n1) = (shape.dim0(), shape.dim1());
        if d.rows() != n0 || d.cols() != n1 {
            return Err(Error::dims("differential rows", n0, d.rows()));
        }
        for (what, given, want) in [
            ("l3 on V0", &l3_000, &shape.l3_000),
            ("l3 with one V1 argument", &l3_001, &shape.l3_001),
            ("l5", &l5, &shape.l5),
        ] {
            if !given.same_shape(want) {
                return Err(Error::dims(what, want.out_dim(), given.out_dim()));
            }
        }
        Ok(ThreeLie2Algebra {
            d,
            l3_000,
            l3_001,
            l5,
            ..shape
        })
    }

    pub fn dim0(&self) -> usize {
        self.labels0.len()
    }

    pub fn dim1(&self) -> usize {
        self.labels1.len()
    }

    pub fn labels0(&self) -> &[String] {
        &self.labels0
    }

    pub fn labels1(&self) -> &[String] {
        &self.labels1
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn l3_000(&self) -> &BlockTensor {
        &self.l3_000
    }

    pub fn l3_001(&self) -> &BlockTensor {
        &self.l3_001
    }

    pub fn l5(&self) -> &BlockTensor {
        &self.l5
    }

    pub fn l3_000_mut(&mut self) -> &mut BlockTensor {
        &mut self.l3_000
    }

    pub fn l3_001_mut(&mut self) -> &mut BlockTensor {
        &mut self.l3_001
    }

    pub fn l5_mut(&mut self) -> &mut BlockTensor {
        &mut self.l5
    }

    pub fn d_mut(&mut self) -> &mut Matrix {
        &mut self.d
    }

    pub fn is_skeletal(&self) -> bool {
        self.d.is_zero()
    }

    pub fn is_strict(&self) -> bool {
        self.l5.is_zero()
    }

    /// `(V0, l3|V0)` as a plain 3-bracket.
    pub fn degree_zero_algebra(&self) -> ThreeLieAlgebra {
        ThreeLieAlgebra::from_tensor(self.labels0.clone(), self.l3_000.clone())
            .expect("shape checked at construction")
    }

    fn space_dim(&self, degree: i32) -> usize {
        match degree {
            0 => self.dim0(),
            1 => self.dim1(),
            _ => 0,
        }
    }

    pub fn zero_in(&self, degree: i32) -> Graded {
        Graded {
            degree,
            coords: vector::zeros(self.space_dim(degree)),
        }
    }

    pub fn e0(&self, i: usize) -> Graded {
        Graded {
            degree: 0,
            coords: vector::unit(self.dim0(), i),
        }
    }

    pub fn e1(&self, i: usize) -> Graded {
        Graded {
            degree: 1,
            coords: vector::unit(self.dim1(), i),
        }
    }

    pub fn v0(&self, coords: Vector) -> Graded {
        Graded { degree: 0, coords }
    }

    pub fn v1(&self, coords: Vector) -> Graded {
        Graded { degree: 1, coords }
    }

    /// The differential on a homogeneous element (zero on `V0`).
    pub fn apply_d(&self, x: &Graded) -> Graded {
        match x.degree {
            1 => self.v0(self.d.mul_vec(&x.coords)),
            k => self.zero_in(k - 1),
        }
    }

    /// `l3` on homogeneous arguments, totally skew in the plain sense.
    pub fn l3(&self, a: &Graded, b: &Graded, c: &Graded) -> Graded {
        let degree = a.degree + b.degree + c.degree;
        let out = match degree {
            0 => self.l3_000.apply(&[&a.coords, &b.coords, &c.coords]),
            1 => {
                // Move the single V1 argument to the last slot: (f,x,y) is a
                // cyclic shift of (x,y,f), (x,f,y) a transposition.
                let (x, y, f, negate) = if a.degree == 1 {
                    (b, c, a, false)
                } else if b.degree == 1 {
                    (a, c, b, true)
                } else {
                    (a, b, c, false)
                };
                let v = self.l3_001.apply(&[&x.coords, &y.coords, &f.coords]);
                v.map(|v| if negate { vector::neg(&v) } else { v })
            }
            _ => return self.zero_in(degree),
        };
        Graded {
            degree,
            coords: out.expect("homogeneous arguments sized to their degree"),
        }
    }

    /// `l5` on homogeneous arguments; nonzero only on `V0⁵`.
    pub fn l5_graded(&self, args: [&Graded; 5]) -> Graded {
        let degree = 1 + args.iter().map(|a| a.degree).sum::<i32>();
        if degree != 1 {
            return self.zero_in(degree);
        }
        let coords: Vec<&[Scalar]> = args.iter().map(|a| a.coords.as_slice()).collect();
        Graded {
            degree,
            coords: self.l5.apply(&coords).expect("arguments sized to V0"),
        }
    }

    fn names0(&self, idx: &[usize]) -> Vec<String> {
        labelled(&self.labels0, idx)
    }

    /// Checks every defining equation of a 2-term 3-Lie∞ algebra on the
    /// basis tuples that skew-symmetry leaves independent. The vanishing of
    /// `l3` with two or more `V1` arguments holds by construction.
    pub fn verify_two_term(&self) -> VerificationReport {
        let (n0, n1) = (self.dim0(), self.dim1());
        let mut r = VerificationReport::new();
        for label in [
            "d_equivariant",
            "d_balanced",
            "dd_triple",
            "fundamental_defect",
            "defect_df_first",
            "defect_df_middle",
            "coherence",
        ] {
            r.touch(label);
        }
        let l3 = |a: &Graded, b: &Graded, c: &Graded| self.l3(a, b, c);
        let l5 = |a: &Graded, b: &Graded, c: &Graded, d: &Graded, e: &Graded| self.l5_graded([a, b, c, d, e]);
        let d = |x: &Graded| self.apply_d(x);
        let (e0, e1) = (|i| self.e0(i), |i| self.e1(i));
        let f_name = |a: usize| self.labels1[a].clone();

        for p in combinations(n0, 2) {
            let (x, y) = (e0(p[0]), e0(p[1]));
            for a in 0..n1 {
                let f = e1(a);
                let lhs = d(&l3(&x, &y, &f));
                let rhs = l3(&x, &y, &d(&f));
                r.compare(
                    "d_equivariant",
                    || vec![self.labels0[p[0]].clone(), self.labels0[p[1]].clone(), f_name(a)],
                    &lhs.coords,
                    &rhs.coords,
                );
            }
        }

        for a in 0..n1 {
            for b in a..n1 {
                let (f, g) = (e1(a), e1(b));
                for i in 0..n0 {
                    let x = e0(i);
                    let lhs = l3(&d(&f), &g, &x);
                    let rhs = l3(&f, &d(&g), &x);
                    r.compare(
                        "d_balanced",
                        || vec![f_name(a), f_name(b), self.labels0[i].clone()],
                        &lhs.coords,
                        &rhs.coords,
                    );
                }
            }
        }

        for t in tuples(n1, 3) {
            let (f, g, h) = (e1(t[0]), e1(t[1]), e1(t[2]));
            let first = l3(&d(&f), &d(&g), &h);
            let second = l3(&d(&f), &g, &d(&h));
            let third = l3(&f, &d(&g), &d(&h));
            let names = || t.iter().map(|&a| f_name(a)).collect();
            r.compare("dd_triple", names, &first.coords, &second.coords);
            r.compare("dd_triple", names, &second.coords, &third.coords);
        }

        // The fundamental-identity defect with x1, x2 allowed to be graded.
        let defect = |x1: &Graded, x2: &Graded, x3: &Graded, x4: &Graded, x5: &Graded| {
            l3(x3, &l3(x1, x2, x4), x5)
                .plus(&l3(&l3(x1, x2, x3), x4, x5))
                .plus(&l3(x3, x4, &l3(x1, x2, x5)))
                .minus(&l3(x1, x2, &l3(x3, x4, x5)))
        };

        for p in combinations(n0, 2) {
            for q in combinations(n0, 3) {
                let (x1, x2, x3, x4, x5) = (e0(p[0]), e0(p[1]), e0(q[0]), e0(q[1]), e0(q[2]));
                let lhs = d(&l5(&x1, &x2, &x3, &x4, &x5));
                let rhs = defect(&x1, &x2, &x3, &x4, &x5);
                r.compare(
                    "fundamental_defect",
                    || self.names0(&[p[0], p[1], q[0], q[1], q[2]]),
                    &lhs.coords,
                    &rhs.coords,
                );
            }
        }

        for a in 0..n1 {
            let f = e1(a);
            for i in 0..n0 {
                let x2 = e0(i);
                for q in combinations(n0, 3) {
                    let (x3, x4, x5) = (e0(q[0]), e0(q[1]), e0(q[2]));
                    let lhs = l5(&d(&f), &x2, &x3, &x4, &x5);
                    let rhs = defect(&f, &x2, &x3, &x4, &x5);
                    r.compare(
                        "defect_df_first",
                        || {
                            let mut v = vec![f_name(a)];
                            v.extend(self.names0(&[i, q[0], q[1], q[2]]));
                            v
                        },
                        &lhs.coords,
                        &rhs.coords,
                    );
                }
            }
        }

        for p in combinations(n0, 2) {
            let (x1, x2) = (e0(p[0]), e0(p[1]));
            for a in 0..n1 {
                let f = e1(a);
                for q in combinations(n0, 2) {
                    let (x4, x5) = (e0(q[0]), e0(q[1]));
                    let lhs = l5(&x1, &x2, &d(&f), &x4, &x5);
                    let rhs = defect(&x1, &x2, &f, &x4, &x5);
                    r.compare(
                        "defect_df_middle",
                        || {
                            let mut v = self.names0(&p);
                            v.push(f_name(a));
                            v.extend(self.names0(&q));
                            v
                        },
                        &lhs.coords,
                        &rhs.coords,
                    );
                }
            }
        }

        let pairs: Vec<Vec<usize>> = combinations(n0, 2).collect();
        for p in &pairs {
            for q in &pairs {
                for s in &pairs {
                    for i7 in 0..n0 {
                        let idx = [p[0], p[1], q[0], q[1], s[0], s[1], i7];
                        let x: Vec<Graded> = idx.iter().map(|&i| e0(i)).collect();
                        let (lhs, rhs) = self.coherence_sides(&x);
                        r.compare("coherence", || self.names0(&idx), &lhs.coords, &rhs.coords);
                    }
                }
            }
        }
        r
    }

    /// Both sides of the seven-argument coherence law for `l5`.
    fn coherence_sides(&self, x: &[Graded]) -> (Graded, Graded) {
        let l3 = |a: &Graded, b: &Graded, c: &Graded| self.l3(a, b, c);
        let l5 = |a: &Graded, b: &Graded, c: &Graded, d: &Graded, e: &Graded| self.l5_graded([a, b, c, d, e]);
        let [x1, x2, x3, x4, x5, x6, x7] = [&x[0], &x[1], &x[2], &x[3], &x[4], &x[5], &x[6]];
        let lhs = l3(&l5(x1, x2, x3, x4, x5), x6, x7)
            .plus(&l3(x5, &l5(x1, x2, x3, x4, x6), x7))
            .plus(&l3(x1, x2, &l5(x3, x4, x5, x6, x7)))
            .plus(&l3(x5, x6, &l5(x1, x2, x3, x4, x7)))
            .plus(&l5(x1, x2, &l3(x3, x4, x5), x6, x7))
            .plus(&l5(x1, x2, x5, &l3(x3, x4, x6), x7))
            .plus(&l5(x1, x2, x5, x6, &l3(x3, x4, x7)));
        let rhs = l3(x3, x4, &l5(x1, x2, x5, x6, x7))
            .plus(&l5(&l3(x1, x2, x3), x4, x5, x6, x7))
            .plus(&l5(x3, &l3(x1, x2, x4), x5, x6, x7))
            .plus(&l5(x3, x4, &l3(x1, x2, x5), x6, x7))
            .plus(&l5(x3, x4, x5, &l3(x1, x2, x6), x7))
            .plus(&l5(x1, x2, x3, x4, &l3(x5, x6, x7)))
            .plus(&l5(x3, x4, x5, x6, &l3(x1, x2, x7)));
        (lhs, rhs)
    }
}

fn same_algebra(a: &Arc<ThreeLie2Algebra>, b: &Arc<ThreeLie2Algebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn require_verified(what: &str, l: &ThreeLie2Algebra) -> Result<()> {
    let r = l.verify_two_term();
    if r.passed() {
        Ok(())
    } else {
        Err(Error::precondition(format!("{what} is not a 2-term 3-Lie∞ algebra"), r))
    }
}

pub fn phi2_blocks(n0: usize) -> Vec<Block> {
    vec![Block::Skew { dim: n0, arity: 3 }]
}

/// A homomorphism: a chain map `(φ0, φ1)` plus a skew trilinear `φ2: V0³ → V1'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    source: Arc<ThreeLie2Algebra>,
    target: Arc<ThreeLie2Algebra>,
    phi0: Matrix,
    phi1: Matrix,
    phi2: BlockTensor,
}

impl Homomorphism {
    /// Checks shapes and the chain-map condition `d' φ1 = φ0 d`.
    pub fn new(
        source: Arc<ThreeLie2Algebra>,
        target: Arc<ThreeLie2Algebra>,
        phi0: Matrix,
        phi1: Matrix,
        phi2: BlockTensor,
    ) -> Result<Self> {
        if phi0.rows() != target.dim0() || phi0.cols() != source.dim0() {
            return Err(Error::dims("degree-0 map", target.dim0() * source.dim0(), phi0.rows() * phi0.cols()));
        }
        if phi1.rows() != target.dim1() || phi1.cols() != source.dim1() {
            return Err(Error::dims("degree-1 map", target.dim1() * source.dim1(), phi1.rows() * phi1.cols()));
        }
        if !phi2.same_shape(&BlockTensor::zeros(phi2_blocks(source.dim0()), target.dim1())) {
            return Err(Error::dims("trilinear component", target.dim1(), phi2.out_dim()));
        }
        let lhs = target.d().checked_mul(&phi1)?;
        let rhs = phi0.checked_mul(source.d())?;
        if lhs != rhs {
            return Err(Error::NotChainMap(format!("d'∘φ1 = {lhs:?} but φ0∘d = {rhs:?}")));
        }
        Ok(Homomorphism {
            source,
            target,
            phi0,
            phi1,
            phi2,
        })
    }

    /// Identity chain map with vanishing trilinear component.
    pub fn identity(l: Arc<ThreeLie2Algebra>) -> Self {
        let (n0, n1) = (l.dim0(), l.dim1());
        Homomorphism {
            source: l.clone(),
            target: l,
            phi0: Matrix::identity(n0),
            phi1: Matrix::identity(n1),
            phi2: BlockTensor::zeros(phi2_blocks(n0), n1),
        }
    }

    /// The map with all components zero.
    pub fn zero(source: Arc<ThreeLie2Algebra>, target: Arc<ThreeLie2Algebra>) -> Self {
        Homomorphism {
            phi0: Matrix::zeros(target.dim0(), source.dim0()),
            phi1: Matrix::zeros(target.dim1(), source.dim1()),
            phi2: BlockTensor::zeros(phi2_blocks(source.dim0()), target.dim1()),
            source,
            target,
        }
    }

    pub fn source(&self) -> &Arc<ThreeLie2Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ThreeLie2Algebra> {
        &self.target
    }

    pub fn phi0(&self) -> &Matrix {
        &self.phi0
    }

    pub fn phi1(&self) -> &Matrix {
        &self.phi1
    }

    pub fn phi2(&self) -> &BlockTensor {
        &self.phi2
    }

    fn map0(&self, x: &Graded) -> Graded {
        self.target.v0(self.phi0.mul_vec(&x.coords))
    }

    fn map1(&self, x: &Graded) -> Graded {
        self.target.v1(self.phi1.mul_vec(&x.coords))
    }

    fn phi2_of(&self, a: &Graded, b: &Graded, c: &Graded) -> Graded {
        self.target.v1(
            self.phi2
                .apply(&[&a.coords, &b.coords, &c.coords])
                .expect("V0 arguments"),
        )
    }

    /// Checks the three compatibility equations with the brackets. Both
    /// endpoints must themselves be 2-term 3-Lie∞ algebras.
    pub fn verify(&self) -> Result<VerificationReport> {
        require_verified("source", &self.source)?;
        require_verified("target", &self.target)?;
        Ok(self.verify_unchecked())
    }

    fn verify_unchecked(&self) -> VerificationReport {
        let (s, t) = (&*self.source, &*self.target);
        let n0 = s.dim0();
        let mut r = VerificationReport::new();
        for label in ["bracket_defect", "mixed_defect", "l5_compat"] {
            r.touch(label);
        }
        let e0 = |i| s.e0(i);
        let m0 = |x: &Graded| self.map0(x);
        let p2 = |a: &Graded, b: &Graded, c: &Graded| self.phi2_of(a, b, c);

        for q in combinations(n0, 3) {
            let (x1, x2, x3) = (e0(q[0]), e0(q[1]), e0(q[2]));
            let lhs = t.apply_d(&p2(&x1, &x2, &x3));
            let rhs = m0(&s.l3(&x1, &x2, &x3)).minus(&t.l3(&m0(&x1), &m0(&x2), &m0(&x3)));
            r.compare("bracket_defect", || s.names0(&q), &lhs.coords, &rhs.coords);
        }

        for p in combinations(n0, 2) {
            let (x1, x2) = (e0(p[0]), e0(p[1]));
            for a in 0..s.dim1() {
                let h = s.e1(a);
                let lhs = p2(&x1, &x2, &s.apply_d(&h));
                let rhs = self
                    .map1(&s.l3(&x1, &x2, &h))
                    .minus(&t.l3(&m0(&x1), &m0(&x2), &self.map1(&h)));
                r.compare(
                    "mixed_defect",
                    || {
                        let mut v = s.names0(&p);
                        v.push(s.labels1[a].clone());
                        v
                    },
                    &lhs.coords,
                    &rhs.coords,
                );
            }
        }

        for p in combinations(n0, 2) {
            let (x1, x2) = (e0(p[0]), e0(p[1]));
            for q in tuples(n0, 3) {
                let (x3, x4, x5) = (e0(q[0]), e0(q[1]), e0(q[2]));
                let lhs = t
                    .l5_graded([&m0(&x1), &m0(&x2), &m0(&x3), &m0(&x4), &m0(&x5)])
                    .plus(&t.l3(&p2(&x1, &x2, &x3), &m0(&x4), &m0(&x5)))
                    .plus(&t.l3(&m0(&x3), &p2(&x1, &x2, &x4), &m0(&x5)))
                    .plus(&t.l3(&m0(&x3), &m0(&x4), &p2(&x1, &x2, &x5)))
                    .plus(&p2(&s.l3(&x1, &x2, &x3), &x4, &x5))
                    .plus(&p2(&x3, &s.l3(&x1, &x2, &x4), &x5))
                    .plus(&p2(&x3, &x4, &s.l3(&x1, &x2, &x5)));
                let rhs = t
                    .l3(&m0(&x1), &m0(&x2), &p2(&x3, &x4, &x5))
                    .plus(&p2(&x1, &x2, &s.l3(&x3, &x4, &x5)))
                    .plus(&self.map1(&s.l5_graded([&x1, &x2, &x3, &x4, &x5])));
                r.compare(
                    "l5_compat",
                    || s.names0(&[p[0], p[1], q[0], q[1], q[2]]),
                    &lhs.coords,
                    &rhs.coords,
                );
            }
        }
        r
    }

    /// The composite "`inner` first, then `outer`":
    /// `(φ0'φ0, φ1'φ1, φ2'(φ0·, φ0·, φ0·) + φ1'φ2)`.
    pub fn compose(outer: &Homomorphism, inner: &Homomorphism) -> Result<Homomorphism> {
        if !same_algebra(&inner.target, &outer.source) {
            return Err(Error::EndpointMismatch(
                "inner map's target differs from outer map's source".into(),
            ));
        }
        let phi0 = outer.phi0.checked_mul(&inner.phi0)?;
        let phi1 = outer.phi1.checked_mul(&inner.phi1)?;
        let pulled = BlockTensor::from_fn(phi2_blocks(inner.source.dim0()), outer.target.dim1(), |k| {
            let cols: Vec<Vector> = k.iter().map(|&i| inner.phi0.column(i)).collect();
            outer.phi2.apply(&[&cols[0], &cols[1], &cols[2]])
        })?;
        let phi2 = pulled.checked_add(&inner.phi2.map_output(&outer.phi1)?)?;
        Homomorphism::new(inner.source.clone(), outer.target.clone(), phi0, phi1, phi2)
    }
}

/// Free function form of [`Homomorphism::verify`].
pub fn verify_homomorphism(phi: &Homomorphism) -> Result<VerificationReport> {
    phi.verify()
}

/// Free function form of [`Homomorphism::compose`].
pub fn compose_homomorphisms(outer: &Homomorphism, inner: &Homomorphism) -> Result<Homomorphism> {
    Homomorphism::compose(outer, inner)
}

pub fn identity_homomorphism(l: Arc<ThreeLie2Algebra>) -> Homomorphism {
    Homomorphism::identity(l)
}

/// A 2-homomorphism `τ: φ ⇒ ψ`, a chain homotopy `τ: V0 → V1'` with
/// `ψ0 = φ0 + d'τ` and `ψ1 = φ1 + τd`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoHomomorphism {
    source: Arc<Homomorphism>,
    target: Arc<Homomorphism>,
    tau: Matrix,
}

impl TwoHomomorphism {
    pub fn new(source: Arc<Homomorphism>, target: Arc<Homomorphism>, tau: Matrix) -> Result<Self> {
        if !same_algebra(&source.source, &target.source) || !same_algebra(&source.target, &target.target) {
            return Err(Error::EndpointMismatch(
                "the two homomorphisms have different endpoints".into(),
            ));
        }
        let (s, t) = (&*source.source, &*source.target);
        if tau.rows() != t.dim1() || tau.cols() != s.dim0() {
            return Err(Error::dims("homotopy", t.dim1() * s.dim0(), tau.rows() * tau.cols()));
        }
        let psi0 = &source.phi0 + &t.d().checked_mul(&tau)?;
        let psi1 = &source.phi1 + &tau.checked_mul(s.d())?;
        if psi0 != target.phi0 || psi1 != target.phi1 {
            return Err(Error::NotChainHomotopy(
                "target maps differ from source maps shifted by d'τ and τd".into(),
            ));
        }
        Ok(TwoHomomorphism { source, target, tau })
    }

    /// The identity 2-homomorphism `τ = 0: φ ⇒ φ`.
    pub fn identity(phi: Arc<Homomorphism>) -> Self {
        let tau = Matrix::zeros(phi.target.dim1(), phi.source.dim0());
        TwoHomomorphism {
            source: phi.clone(),
            target: phi,
            tau,
        }
    }

    /// Builds the unique `ψ` for which `τ: φ ⇒ ψ` satisfies the defining
    /// equation, and returns that 2-homomorphism.
    pub fn from_twist(phi: Arc<Homomorphism>, tau: Matrix) -> Result<Self> {
        let (s, t) = (phi.source.clone(), phi.target.clone());
        if tau.rows() != t.dim1() || tau.cols() != s.dim0() {
            return Err(Error::dims("homotopy", t.dim1() * s.dim0(), tau.rows() * tau.cols()));
        }
        let psi0 = &phi.phi0 + &t.d().checked_mul(&tau)?;
        let psi1 = &phi.phi1 + &tau.checked_mul(s.d())?;
        let defect = BlockTensor::from_fn(phi2_blocks(s.dim0()), t.dim1(), |k| {
            Ok(twist_defect(&phi, &tau, [k[0], k[1], k[2]]).coords)
        })?;
        let psi2 = phi.phi2.checked_sub(&defect)?;
        let psi = Homomorphism::new(s, t, psi0, psi1, psi2)?;
        TwoHomomorphism::new(phi, Arc::new(psi), tau)
    }

    pub fn source(&self) -> &Arc<Homomorphism> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Homomorphism> {
        &self.target
    }

    pub fn tau(&self) -> &Matrix {
        &self.tau
    }

    /// Checks the chain-homotopy equations and the equation relating
    /// `φ2 − ψ2` to `τ` on every ordered basis triple.
    pub fn verify(&self) -> Result<VerificationReport> {
        let (s, t) = (&*self.source.source, &*self.source.target);
        let mut r = VerificationReport::new();
        r.touch("chain_homotopy");
        r.touch("tau_defect");
        let psi0 = &self.source.phi0 + &t.d().checked_mul(&self.tau)?;
        let psi1 = &self.source.phi1 + &self.tau.checked_mul(s.d())?;
        r.record("chain_homotopy", psi0 == self.target.phi0, || {
            (vec!["V0".into()], format!("{:?}", self.target.phi0), format!("{psi0:?}"))
        });
        r.record("chain_homotopy", psi1 == self.target.phi1, || {
            (vec!["V1".into()], format!("{:?}", self.target.phi1), format!("{psi1:?}"))
        });
        for q in tuples(s.dim0(), 3) {
            let lhs = vector::sub(
                &self.source.phi2.value(&q)?,
                &self.target.phi2.value(&q)?,
            );
            let rhs = twist_defect(&self.source, &self.tau, [q[0], q[1], q[2]]);
            r.compare("tau_defect", || s.names0(&q), &lhs, &rhs.coords);
        }
        Ok(r)
    }

    /// `τ'τ = τ + τ'` for `τ: φ ⇒ ψ` (`self`) and `τ': ψ ⇒ μ` (`next`).
    pub fn vertical(&self, next: &TwoHomomorphism) -> Result<TwoHomomorphism> {
        if !(Arc::ptr_eq(&self.target, &next.source) || self.target == next.source) {
            return Err(Error::EndpointMismatch(
                "first 2-homomorphism's target differs from second's source".into(),
            ));
        }
        TwoHomomorphism::new(self.source.clone(), next.target.clone(), &self.tau + &next.tau)
    }

    /// Horizontal composite of `τ: φ ⇒ ψ` (`inner`, on `V → V'`) and
    /// `τ': φ' ⇒ ψ'` (`outer`, on `V' → V''`), from `φ'∘φ` to `ψ'∘ψ`, with
    /// component `x ↦ τ'(ψ0 x) + φ1' τ(x)`.
    pub fn horizontal(outer: &TwoHomomorphism, inner: &TwoHomomorphism) -> Result<TwoHomomorphism> {
        if !same_algebra(&inner.source.target, &outer.source.source) {
            return Err(Error::EndpointMismatch(
                "inner 2-homomorphism's target algebra differs from outer's source".into(),
            ));
        }
        let source = Homomorphism::compose(&outer.source, &inner.source)?;
        let target = Homomorphism::compose(&outer.target, &inner.target)?;
        let tau = &outer.tau.checked_mul(&inner.target.phi0)? + &outer.source.phi1.checked_mul(&inner.tau)?;
        TwoHomomorphism::new(Arc::new(source), Arc::new(target), tau)
    }
}

/// Right-hand side of the 2-homomorphism equation at basis indices:
/// the cyclic sum of `l3'(φ0x1, φ0x2, τx3) + l3'(d'τx1, τx2, φ0x3)`, minus
/// `τ(l3(x1, x2, x3))`, plus a single `l3'(d'τx1, d'τx2, τx3)`.
fn twist_defect(phi: &Homomorphism, tau: &Matrix, q: [usize; 3]) -> Graded {
    let (s, t) = (&*phi.source, &*phi.target);
    let x: Vec<Graded> = q.iter().map(|&i| s.e0(i)).collect();
    let f0 = |v: &Graded| phi.map0(v);
    let tv = |v: &Graded| t.v1(tau.mul_vec(&v.coords));
    let dt = |v: &Graded| t.apply_d(&tv(v));
    let mut out = t.zero_in(1);
    for rot in 0..3 {
        let (a, b, c) = (&x[rot], &x[(rot + 1) % 3], &x[(rot + 2) % 3]);
        out = out
            .plus(&t.l3(&f0(a), &f0(b), &tv(c)))
            .plus(&t.l3(&dt(a), &tv(b), &f0(c)));
    }
    out = out.minus(&tv(&s.l3(&x[0], &x[1], &x[2])));
    out.plus(&t.l3(&dt(&x[0]), &dt(&x[1]), &tv(&x[2])))
}

pub fn verify_two_term(l: &ThreeLie2Algebra) -> VerificationReport {
    l.verify_two_term()
}

pub fn verify_two_homomorphism(t: &TwoHomomorphism) -> Result<VerificationReport> {
    t.verify()
}

pub fn vertical_compose(first: &TwoHomomorphism, second: &TwoHomomorphism) -> Result<TwoHomomorphism> {
    first.vertical(second)
}

pub fn horizontal_compose(outer: &TwoHomomorphism, inner: &TwoHomomorphism) -> Result<TwoHomomorphism> {
    TwoHomomorphism::horizontal(outer, inner)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::trilie::numbered_labels;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    /// Strict algebra of the crossed module on ℝ³ with `[e1,e2,e3] = e1` on
    /// both sides, `μ = id`, and the three displayed action matrices.
    pub(crate) fn example_strict() -> ThreeLie2Algebra {
        let mut l = ThreeLie2Algebra::zero(numbered_labels("x", 3), numbered_labels("f", 3));
        *l.d_mut() = Matrix::identity(3);
        l.l3_000_mut().set(&[0, 1, 2], &[s(1), s(0), s(0)]).unwrap();
        let e1 = [s(1), s(0), s(0)];
        l.l3_001_mut().set(&[0, 1, 2], &e1).unwrap();
        l.l3_001_mut().set(&[1, 2, 0], &e1).unwrap();
        l.l3_001_mut().set(&[2, 0, 1], &e1).unwrap();
        l
    }

    #[test]
    fn example_strict_algebra_verifies() {
        let r = example_strict().verify_two_term();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn zero_algebra_verifies() {
        let l = ThreeLie2Algebra::zero(numbered_labels("x", 3), numbered_labels("f", 2));
        assert!(l.verify_two_term().passed());
    }

    #[test]
    fn perturbed_action_fails() {
        let mut l = example_strict();
        l.l3_001_mut().bump(&[0, 1, 0], 1, &s(1)).unwrap();
        let r = l.verify_two_term();
        assert!(!r.passed());
    }

    #[test]
    fn graded_l3_is_plainly_skew() {
        let l = example_strict();
        let (x, y, f) = (l.e0(1), l.e0(2), l.e1(0));
        let base = l.l3(&x, &y, &f);
        assert_eq!(base.coords, vec![s(1), s(0), s(0)]);
        assert_eq!(l.l3(&f, &x, &y), base);
        assert_eq!(l.l3(&x, &f, &y).coords, vector::neg(&base.coords));
        assert!(l.l3(&x, &f, &l.e1(1)).coords.is_empty());
    }

    #[test]
    fn identity_and_zero_maps_verify() {
        let l = Arc::new(example_strict());
        assert!(Homomorphism::identity(l.clone()).verify().unwrap().passed());
        assert!(Homomorphism::zero(l.clone(), l.clone()).verify().unwrap().passed());
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let l = Arc::new(example_strict());
        let bad = Homomorphism::new(
            l.clone(),
            l.clone(),
            Matrix::identity(3),
            Matrix::zeros(3, 3),
            BlockTensor::zeros(phi2_blocks(3), 3),
        );
        assert!(matches!(bad, Err(Error::NotChainMap(_))));
    }

    #[test]
    fn twisted_identity_is_a_verified_homomorphism() {
        let l = Arc::new(example_strict());
        let id = Arc::new(Homomorphism::identity(l));
        let tau = Matrix::from_ints(&[&[1, 0, 2], &[0, -1, 0], &[1, 1, 0]]);
        let t = TwoHomomorphism::from_twist(id, tau).unwrap();
        assert!(t.verify().unwrap().passed());
        assert!(t.target().verify().unwrap().passed(), "{}", t.target().verify().unwrap());
    }

    #[test]
    fn zero_tau_between_different_maps_fails() {
        let l = Arc::new(example_strict());
        let id = Arc::new(Homomorphism::identity(l.clone()));
        let mut phi2 = BlockTensor::zeros(phi2_blocks(3), 3);
        phi2.set(&[0, 1, 2], &[s(1), s(0), s(0)]).unwrap();
        let other = Homomorphism::new(l.clone(), l, Matrix::identity(3), Matrix::identity(3), phi2).unwrap();
        let t = TwoHomomorphism::new(id, Arc::new(other), Matrix::zeros(3, 3)).unwrap();
        assert_eq!(t.verify().unwrap().failed_conditions(), vec!["tau_defect".to_string()]);
    }
}
