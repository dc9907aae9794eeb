//! Finitely supported Z-graded Q-vector spaces, graded maps and cochain
//! complexes (differential of degree +1).
//!
//! Sign conventions:
//! * shift: `C[n]^i = C^{n+i}` with differential `(-1)^n d`;
//! * dual: `(C^∨)^{-i} = (C^i)^∨` with `(d f) = -(-1)^{|f|} f ∘ d`;
//! * tensor: `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`, braiding
//!   `τ(x⊗y) = (-1)^{|x||y|} y⊗x`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Span, SparseVec};
use crate::par;
use crate::rational::{is_odd, sign, Q};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedSpace {
    components: BTreeMap<i32, Vec<String>>,
}

impl GradedSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_components(components: BTreeMap<i32, Vec<String>>) -> Result<Self> {
        for (d, labels) in &components {
            let uniq: BTreeSet<&String> = labels.iter().collect();
            if uniq.len() != labels.len() {
                return Err(Error::Invalid(format!("duplicate basis label in degree {d}")));
            }
        }
        Ok(Self {
            components: components.into_iter().filter(|(_, l)| !l.is_empty()).collect(),
        })
    }

    /// The one-dimensional space `k` in a single degree.
    pub fn line(degree: i32, label: &str) -> Self {
        let mut s = Self::new();
        s.push(degree, label.to_string());
        s
    }

    /// Appends a basis vector; returns its index within the degree.
    pub fn push(&mut self, degree: i32, label: String) -> usize {
        let c = self.components.entry(degree).or_default();
        assert!(!c.contains(&label), "duplicate label {label} in degree {degree}");
        c.push(label);
        c.len() - 1
    }

    /// Builds a space from a flat list of `(label, degree)` and returns, for
    /// every flat index, its `(degree, index within degree)`.
    pub fn from_flat<S: AsRef<str>>(items: &[(S, i32)]) -> (Self, Vec<(i32, usize)>) {
        let mut s = Self::new();
        let pos = items
            .iter()
            .map(|(l, d)| (*d, s.push(*d, l.as_ref().to_string())))
            .collect();
        (s, pos)
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.components.get(&degree).map_or(0, |c| c.len())
    }

    pub fn labels(&self, degree: i32) -> &[String] {
        self.components.get(&degree).map_or(&[], |c| c.as_slice())
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.components.keys().copied()
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Degree → dimension, nonzero entries only.
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.components.iter().map(|(d, c)| (*d, c.len())).collect()
    }

    fn relabel(&self, degree_map: impl Fn(i32) -> i32, label_map: impl Fn(&str) -> String) -> Self {
        let components = self
            .components
            .iter()
            .map(|(d, c)| (degree_map(*d), c.iter().map(|l| label_map(l)).collect()))
            .collect();
        Self { components }
    }
}

/// A homogeneous linear map of degree `shift`; `blocks[d]` maps source degree
/// `d` to target degree `d + shift`. Missing blocks are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedSpace,
    target: GradedSpace,
    shift: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl GradedMap {
    pub fn zero(source: GradedSpace, target: GradedSpace, shift: i32) -> Self {
        Self {
            source,
            target,
            shift,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let mut m = Self::zero(space.clone(), space.clone(), 0);
        for d in space.degrees() {
            m.blocks.insert(d, Matrix::identity(space.dim(d)));
        }
        m
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn set_block(&mut self, degree: i32, m: Matrix) -> Result<()> {
        let rows = self.target.dim(degree + self.shift);
        let cols = self.source.dim(degree);
        if m.nrows() != rows || m.ncols() != cols {
            return Err(Error::Invalid(format!(
                "block at degree {degree} has shape {}x{}, expected {rows}x{cols}",
                m.nrows(),
                m.ncols()
            )));
        }
        if rows == 0 || cols == 0 || m.is_zero() {
            self.blocks.remove(&degree);
        } else {
            self.blocks.insert(degree, m);
        }
        Ok(())
    }

    /// The block at source degree `degree` (a zero matrix of the right shape
    /// when absent).
    pub fn block(&self, degree: i32) -> Matrix {
        self.blocks.get(&degree).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.target.dim(degree + self.shift), self.source.dim(degree))
        })
    }

    pub fn blocks(&self) -> &BTreeMap<i32, Matrix> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.is_zero())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target != self.source {
            return Err(Error::Invalid("composition of incompatible graded maps".into()));
        }
        let mut out = GradedMap::zero(other.source.clone(), self.target.clone(), self.shift + other.shift);
        for (d, b) in &other.blocks {
            if let Some(a) = self.blocks.get(&(d + other.shift)) {
                out.set_block(*d, a.mul(b))?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> GradedMap {
        let mut out = self.clone();
        for b in out.blocks.values_mut() {
            *b = b.scale(c);
        }
        out.blocks.retain(|_, b| !b.is_zero());
        out
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.source != other.source || self.target != other.target || self.shift != other.shift {
            return Err(Error::Invalid("difference of incompatible graded maps".into()));
        }
        let mut out = self.clone();
        for (d, b) in &other.blocks {
            let cur = out.block(*d);
            out.set_block(*d, cur.add(&b.scale(&-Q::one())))?;
        }
        Ok(out)
    }

    /// Total rank over all blocks.
    pub fn rank(&self) -> usize {
        self.blocks.values().map(|b| b.rank()).sum()
    }
}

/// A cochain complex; `d∘d = 0` is checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    space: GradedSpace,
    differential: GradedMap,
}

impl Complex {
    pub fn new(space: GradedSpace, differential: GradedMap) -> Result<Self> {
        if differential.shift != 1 || differential.source != space || differential.target != space {
            return Err(Error::Invalid("differential must be a degree +1 endomorphism".into()));
        }
        let c = Self { space, differential };
        if let Some(d) = c.d_squared_defect() {
            return Err(Error::Axiom(format!("d∘d ≠ 0 starting in degree {d}")));
        }
        Ok(c)
    }

    /// Skips the `d∘d = 0` check; only for deliberately broken differentials.
    pub(crate) fn new_unchecked(space: GradedSpace, differential: GradedMap) -> Self {
        Self { space, differential }
    }

    /// The complex with zero differential.
    pub fn zero_differential(space: GradedSpace) -> Self {
        let differential = GradedMap::zero(space.clone(), space.clone(), 1);
        Self { space, differential }
    }

    /// Builds a complex from a flat basis and the images `d(e_i)` expressed in
    /// flat coordinates.
    pub fn from_flat<S: AsRef<str>>(items: &[(S, i32)], d_columns: &[SparseVec]) -> Result<Self> {
        let (space, pos) = GradedSpace::from_flat(items);
        let d = flat_map(&space, &space, &pos, &pos, 1, d_columns)?;
        Self::new(space, d)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn differential(&self) -> &GradedMap {
        &self.differential
    }

    /// `d : C^degree → C^{degree+1}`.
    pub fn d(&self, degree: i32) -> Matrix {
        self.differential.block(degree)
    }

    /// First degree where `d∘d` fails to vanish, if any.
    pub fn d_squared_defect(&self) -> Option<i32> {
        self.space
            .degrees()
            .find(|&i| !self.d(i + 1).mul(&self.d(i)).is_zero())
    }

    pub fn shift(&self, n: i32) -> Complex {
        let space = self.space.relabel(|d| d - n, |l| l.to_string());
        let s = sign(n as i64);
        let mut differential = GradedMap::zero(space.clone(), space.clone(), 1);
        for (d, b) in self.differential.blocks() {
            differential.set_block(d - n, b.scale(&s)).expect("shape preserved by shift");
        }
        Complex { space, differential }
    }

    pub fn dual(&self) -> Complex {
        let space = self.space.relabel(|d| -d, dual_label);
        let mut differential = GradedMap::zero(space.clone(), space.clone(), 1);
        // (C^∨)^p → (C^∨)^{p+1} is -(-1)^p (d : C^{-p-1} → C^{-p})^T
        for (d, b) in self.differential.blocks() {
            let p = -d - 1;
            differential
                .set_block(p, b.transpose().scale(&-sign(p as i64)))
                .expect("dual block shape");
        }
        Complex { space, differential }
    }

    /// The canonical isomorphism `C → (C^∨)^∨`, `x ↦ (-1)^{|x|} x^{∨∨}`.
    pub fn double_dual_iso(&self) -> GradedMap {
        let dd = self.dual().dual();
        let mut m = GradedMap::zero(self.space.clone(), dd.space.clone(), 0);
        for d in self.space.degrees() {
            m.set_block(d, Matrix::identity(self.space.dim(d)).scale(&sign(d as i64)))
                .expect("square block");
        }
        m
    }

    pub fn tensor(&self, other: &Complex) -> TensorProduct {
        tensor_product(self, other)
    }

    pub fn cone(source: &Complex, target: &Complex, f: &GradedMap) -> Result<Cone> {
        cone(source, target, f)
    }

    pub fn homology(&self) -> Homology {
        homology(self)
    }

    pub fn homology_dims(&self) -> BTreeMap<i32, usize> {
        let degrees: Vec<i32> = self.space.degrees().collect();
        let dims = par::map(&degrees, |&i| {
            let k = self.space.dim(i) - self.d(i).rank();
            k - self.d(i - 1).rank()
        });
        degrees
            .into_iter()
            .zip(dims)
            .filter(|(_, n)| *n > 0)
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology_dims().is_empty()
    }
}

pub fn dual_label(l: &str) -> String {
    format!("{l}*")
}

/// Assembles a graded map from flat column images.
pub fn flat_map(
    source: &GradedSpace,
    target: &GradedSpace,
    source_pos: &[(i32, usize)],
    target_pos: &[(i32, usize)],
    shift: i32,
    columns: &[SparseVec],
) -> Result<GradedMap> {
    if columns.len() != source_pos.len() {
        return Err(Error::Invalid("column count does not match source basis".into()));
    }
    let mut blocks: BTreeMap<i32, Matrix> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        let (sd, sj) = source_pos[j];
        for (i, v) in col {
            let (td, ti) = *target_pos
                .get(*i)
                .ok_or_else(|| Error::Invalid(format!("target index {i} out of range")))?;
            if td != sd + shift {
                return Err(Error::Invalid(format!(
                    "map of degree {shift} sends a degree-{sd} vector to degree {td}"
                )));
            }
            blocks
                .entry(sd)
                .or_insert_with(|| Matrix::zeros(target.dim(sd + shift), source.dim(sd)))
                .add_to(ti, sj, v.clone());
        }
    }
    let mut m = GradedMap::zero(source.clone(), target.clone(), shift);
    for (d, b) in blocks {
        m.set_block(d, b)?;
    }
    Ok(m)
}

/// Checks `d_T ∘ f = (-1)^{|f|} f ∘ d_S`.
pub fn is_chain_map(source: &Complex, target: &Complex, f: &GradedMap) -> bool {
    if f.source() != source.space() || f.target() != target.space() {
        return false;
    }
    let s = sign(f.shift() as i64);
    let lhs = target.differential().compose(f);
    let rhs = f.compose(source.differential()).map(|m| m.scale(&s));
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => l.sub(&r).map(|x| x.is_zero()).unwrap_or(false),
        _ => false,
    }
}

pub struct TensorProduct {
    pub complex: Complex,
    /// For each degree, the factor positions `((p, i), (q, j))` of each basis
    /// vector `x_i ⊗ y_j` with `|x_i| = p`, `|y_j| = q`.
    pub factors: BTreeMap<i32, Vec<((i32, usize), (i32, usize))>>,
    /// `τ : C⊗D → D⊗C`.
    pub braiding: GradedMap,
}

fn tensor_basis(
    a: &GradedSpace,
    b: &GradedSpace,
) -> (GradedSpace, BTreeMap<i32, Vec<((i32, usize), (i32, usize))>>) {
    let mut space = GradedSpace::new();
    let mut factors: BTreeMap<i32, Vec<_>> = BTreeMap::new();
    let mut all: BTreeSet<i32> = BTreeSet::new();
    for p in a.degrees() {
        for q in b.degrees() {
            all.insert(p + q);
        }
    }
    for n in all {
        for p in a.degrees() {
            let q = n - p;
            for (i, x) in a.labels(p).iter().enumerate() {
                for (j, y) in b.labels(q).iter().enumerate() {
                    space.push(n, format!("{x}⊗{y}"));
                    factors.entry(n).or_default().push(((p, i), (q, j)));
                }
            }
        }
    }
    (space, factors)
}

fn tensor_product(c: &Complex, e: &Complex) -> TensorProduct {
    let (space, factors) = tensor_basis(&c.space, &e.space);
    let index: BTreeMap<((i32, usize), (i32, usize)), usize> = factors
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(k, f)| (*f, k)))
        .collect();
    let mut differential = GradedMap::zero(space.clone(), space.clone(), 1);
    for (&n, fs) in &factors {
        let mut m = Matrix::zeros(space.dim(n + 1), space.dim(n));
        for (col, &((p, i), (q, j))) in fs.iter().enumerate() {
            let dx = c.d(p).column(i);
            for (i2, v) in &dx {
                let row = index[&((p + 1, *i2), (q, j))];
                m.add_to(row, col, v.clone());
            }
            let dy = e.d(q).column(j);
            let s = sign(p as i64);
            for (j2, v) in &dy {
                let row = index[&((p, i), (q + 1, *j2))];
                m.add_to(row, col, &s * v);
            }
        }
        differential.set_block(n, m).expect("tensor block shape");
    }
    let complex = Complex {
        space: space.clone(),
        differential,
    };
    let (swapped, swapped_factors) = tensor_basis(&e.space, &c.space);
    let swapped_index: BTreeMap<((i32, usize), (i32, usize)), usize> = swapped_factors
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(k, f)| (*f, k)))
        .collect();
    let mut braiding = GradedMap::zero(space.clone(), swapped.clone(), 0);
    for (&n, fs) in &factors {
        let mut m = Matrix::zeros(swapped.dim(n), space.dim(n));
        for (col, &(x, y)) in fs.iter().enumerate() {
            let row = swapped_index[&(y, x)];
            m.set(row, col, sign(x.0 as i64 * y.0 as i64));
        }
        braiding.set_block(n, m).expect("braiding block shape");
    }
    TensorProduct {
        complex,
        factors,
        braiding,
    }
}

pub struct Cone {
    pub complex: Complex,
    /// `D → cone(f)`.
    pub inclusion: GradedMap,
    /// `cone(f) → C[1]`.
    pub projection: GradedMap,
}

/// Mapping cone of a degree-0 chain map `f : C → D`:
/// `cone^n = C^{n+1} ⊕ D^n`, `d(c, y) = (-dc, f c + dy)`.
fn cone(c: &Complex, e: &Complex, f: &GradedMap) -> Result<Cone> {
    if f.shift() != 0 {
        return Err(Error::NotChainMap("cone needs a degree-0 map".into()));
    }
    if !is_chain_map(c, e, f) {
        return Err(Error::NotChainMap("f does not commute with the differentials".into()));
    }
    let shifted = c.shift(1);
    let mut space = GradedSpace::new();
    let degrees: BTreeSet<i32> = shifted.space.degrees().chain(e.space.degrees()).collect();
    for &n in &degrees {
        for l in shifted.space.labels(n) {
            space.push(n, format!("s:{l}"));
        }
        for l in e.space.labels(n) {
            space.push(n, format!("t:{l}"));
        }
    }
    let mut differential = GradedMap::zero(space.clone(), space.clone(), 1);
    let mut inclusion = GradedMap::zero(e.space.clone(), space.clone(), 0);
    let mut projection = GradedMap::zero(space.clone(), shifted.space.clone(), 0);
    for &n in &degrees {
        let a = shifted.space.dim(n);
        let a1 = shifted.space.dim(n + 1);
        let mut m = Matrix::zeros(space.dim(n + 1), space.dim(n));
        let ds = shifted.d(n);
        let fd = f.block(n + 1);
        let de = e.d(n);
        for (i, row) in ds.rows().iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j, v.clone());
            }
        }
        for (i, row) in fd.rows().iter().enumerate() {
            for (j, v) in row {
                m.set(a1 + i, *j, v.clone());
            }
        }
        for (i, row) in de.rows().iter().enumerate() {
            for (j, v) in row {
                m.set(a1 + i, a + *j, v.clone());
            }
        }
        differential.set_block(n, m)?;
        let mut inc = Matrix::zeros(space.dim(n), e.space.dim(n));
        for j in 0..e.space.dim(n) {
            inc.set(a + j, j, Q::one());
        }
        inclusion.set_block(n, inc)?;
        let mut pr = Matrix::zeros(a, space.dim(n));
        for j in 0..a {
            pr.set(j, j, Q::one());
        }
        projection.set_block(n, pr)?;
    }
    Ok(Cone {
        complex: Complex::new(space, differential)?,
        inclusion,
        projection,
    })
}

/// Homology with chosen representative cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub space: GradedSpace,
    /// Representative cycles per degree, as `(label, coefficient)` lists.
    pub representatives: BTreeMap<i32, Vec<Vec<(String, Q)>>>,
    /// Same representatives in coordinates of the complex basis.
    pub cycles: BTreeMap<i32, Vec<SparseVec>>,
}

impl Homology {
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.space.dims()
    }
}

/// Representatives of `ker(out) / im(inc)` in coordinates of the middle space.
pub fn homology_basis(outgoing: &Matrix, incoming: &Matrix) -> Vec<SparseVec> {
    let mut span = Span::new();
    for c in incoming.columns() {
        span.insert(c);
    }
    let mut reps = Vec::new();
    for k in outgoing.kernel() {
        if span.insert(k.clone()) {
            reps.push(k);
        }
    }
    reps
}

fn homology(c: &Complex) -> Homology {
    let degrees: Vec<i32> = c.space.degrees().collect();
    let per = par::map(&degrees, |&i| homology_basis(&c.d(i), &c.d(i - 1)));
    let mut space = GradedSpace::new();
    let mut representatives = BTreeMap::new();
    let mut cycles = BTreeMap::new();
    for (i, reps) in degrees.into_iter().zip(per) {
        if reps.is_empty() {
            continue;
        }
        let labels = c.space.labels(i);
        let mut lists = Vec::new();
        for (k, r) in reps.iter().enumerate() {
            space.push(i, format!("[{i}:{k}]"));
            lists.push(
                r.iter()
                    .map(|(j, v)| (labels[*j].clone(), v.clone()))
                    .collect::<Vec<_>>(),
            );
        }
        representatives.insert(i, lists);
        cycles.insert(i, reps);
    }
    Homology {
        space,
        representatives,
        cycles,
    }
}

/// Degree parity helper used across modules.
pub fn odd(degree: i32) -> bool {
    is_odd(degree as i64)
}

/// Koszul sign `(-1)^{ab}`.
pub fn koszul(a: i32, b: i32) -> Q {
    sign(a as i64 * b as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit;
    use crate::rational::q;

    fn two_term(d: i64) -> Complex {
        // k → k in degrees 0, 1
        let items = [("a", 0), ("b", 1)];
        let mut cols = vec![SparseVec::new(), SparseVec::new()];
        if d != 0 {
            cols[0].insert(1, q(d));
        }
        Complex::from_flat(&items, &cols).unwrap()
    }

    fn three_term() -> Complex {
        let items = [("u", -1), ("x", 0), ("1", 0)];
        let mut cols = vec![SparseVec::new(); 3];
        cols[0].insert(1, q(1));
        Complex::from_flat(&items, &cols).unwrap()
    }

    #[test]
    fn shift_examples() {
        let k2 = Complex::zero_differential(GradedSpace::line(2, "x"));
        assert_eq!(k2.shift(0).space().dims(), [(2, 1)].into());
        assert_eq!(k2.shift(2).space().dims(), [(0, 1)].into());
        let c = two_term(1);
        let s = c.shift(1);
        assert_eq!(s.space().dims(), [(-1, 1), (0, 1)].into());
        assert_eq!(s.d(-1).get(0, 0), q(-1));
    }

    #[test]
    fn dual_examples() {
        let k2 = Complex::zero_differential(GradedSpace::line(2, "x"));
        assert_eq!(k2.dual().space().dims(), [(-2, 1)].into());
        let z = Complex::zero_differential(GradedSpace::new());
        assert!(z.dual().space().is_zero());
    }

    #[test]
    fn double_dual_is_chain_isomorphism() {
        for c in [two_term(1), two_term(3), three_term()] {
            let dd = c.dual().dual();
            let phi = c.double_dual_iso();
            assert!(is_chain_map(&c, &dd, &phi));
            for d in c.space().degrees() {
                let b = phi.block(d);
                assert_eq!(b.rank(), c.space().dim(d));
            }
        }
    }

    #[test]
    fn braiding_on_odd_pair() {
        let x = Complex::zero_differential(GradedSpace::line(1, "x"));
        let y = Complex::zero_differential(GradedSpace::line(1, "y"));
        let t = x.tensor(&y);
        assert_eq!(t.braiding.block(2).get(0, 0), q(-1));
    }

    #[test]
    fn tensor_unit() {
        let c = two_term(2);
        let k = Complex::zero_differential(GradedSpace::line(0, "1"));
        let t = c.tensor(&k).complex;
        assert_eq!(t.space().dims(), c.space().dims());
        assert_eq!(t.d(0), c.d(0));
    }

    #[test]
    fn cone_examples() {
        let k = Complex::zero_differential(GradedSpace::line(0, "a"));
        let id = GradedMap::identity(k.space());
        let cone_id = Complex::cone(&k, &k, &id).unwrap();
        assert!(cone_id.complex.is_acyclic());

        let two = id.scale(&q(2));
        assert!(Complex::cone(&k, &k, &two).unwrap().complex.is_acyclic());

        let zero = Complex::zero_differential(GradedSpace::new());
        let c = two_term(0);
        let f = GradedMap::zero(zero.space().clone(), c.space().clone(), 0);
        let cz = Complex::cone(&zero, &c, &f).unwrap();
        assert_eq!(cz.complex.space().dims(), c.space().dims());
        assert_eq!(cz.complex.homology_dims(), c.homology_dims());
    }

    #[test]
    fn cone_rejects_non_chain_map() {
        let c = two_term(1);
        let mut f = GradedMap::zero(c.space().clone(), c.space().clone(), 0);
        f.set_block(0, Matrix::identity(1)).unwrap();
        assert!(matches!(
            Complex::cone(&c, &c, &f),
            Err(Error::NotChainMap(_))
        ));
    }

    #[test]
    fn homology_examples() {
        assert!(two_term(1).homology_dims().is_empty());
        let k2 = Complex::zero_differential(GradedSpace::line(2, "x"));
        let h = k2.homology();
        assert_eq!(h.dims(), [(2, 1)].into());
        assert_eq!(h.representatives[&2][0], vec![("x".to_string(), q(1))]);
    }

    #[test]
    fn rejects_nonzero_square() {
        let items = [("a", 0), ("b", 1), ("c", 2)];
        let cols = vec![unit(1), unit(2), SparseVec::new()];
        assert!(matches!(Complex::from_flat(&items, &cols), Err(Error::Axiom(_))));
    }
}
