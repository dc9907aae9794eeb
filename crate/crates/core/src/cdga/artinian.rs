//! Finite-dimensional augmented cdgas in structure-constant form.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graded::{koszul, Complex};
use crate::linalg::{add_entry, axpy, scaled, unit, CoordSpan, Matrix, Span, SparseVec};
use crate::rational::{sign, Q};

/// Basis element 0 is the unit; the rest span the augmentation ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinianAlgebra {
    pub labels: Vec<String>,
    pub degrees: Vec<i32>,
    /// Optional weight grading, unit in weight 0 and the ideal in positive
    /// weights; needed by the cellular resolution.
    pub weights: Option<Vec<u32>>,
    /// `b_i b_j` for `i, j ≥ 1`; absent entries are zero.
    pub mult: BTreeMap<(usize, usize), SparseVec>,
    pub d: Vec<SparseVec>,
}

impl ArtinianAlgebra {
    /// Assembles and validates.
    pub fn new(
        labels: Vec<String>,
        degrees: Vec<i32>,
        weights: Option<Vec<u32>>,
        mult: BTreeMap<(usize, usize), SparseVec>,
        d: Vec<SparseVec>,
    ) -> Result<Self> {
        let mut mult = mult;
        mult.retain(|_, v| {
            v.retain(|_, c| !num_traits::Zero::is_zero(c));
            !v.is_empty()
        });
        let mut d = d;
        d.resize(labels.len(), SparseVec::new());
        let a = Self {
            labels,
            degrees,
            weights,
            mult,
            d,
        };
        a.validate()?;
        Ok(a)
    }

    /// The base field.
    pub fn base() -> Self {
        Self::new(vec!["1".into()], vec![0], Some(vec![0]), BTreeMap::new(), vec![]).expect("base field")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn weight(&self, i: usize) -> Option<u32> {
        self.weights.as_ref().map(|w| w[i])
    }

    pub fn product(&self, i: usize, j: usize) -> SparseVec {
        match (i, j) {
            (0, _) => unit(j),
            (_, 0) => unit(i),
            _ => self.mult.get(&(i, j)).cloned().unwrap_or_default(),
        }
    }

    pub fn multiply(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in u {
            for (j, b) in v {
                axpy(&mut out, &(a * b), &self.product(*i, *j));
            }
        }
        out
    }

    pub fn apply_d(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v {
            axpy(&mut out, c, &self.d[*i]);
        }
        out
    }

    pub fn complex(&self) -> Complex {
        let items: Vec<(String, i32)> = self.labels.iter().cloned().zip(self.degrees.iter().copied()).collect();
        Complex::from_flat(&items, &self.d).expect("validated differential")
    }

    pub fn homology_dims(&self) -> BTreeMap<i32, usize> {
        self.complex().homology_dims()
    }

    /// Basis indices of a given degree (and weight, when graded).
    pub fn block(&self, degree: i32, weight: Option<u32>) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.degrees[i] == degree && (weight.is_none() || self.weight(i) == weight))
            .collect()
    }

    fn check(&self, ok: bool, what: impl FnOnce() -> String) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::Axiom(what()))
        }
    }

    fn homogeneous(&self, v: &SparseVec, degree: i32, weight: Option<u32>) -> bool {
        v.keys().all(|k| self.degrees[*k] == degree && (weight.is_none() || self.weight(*k) == weight))
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        self.check(n >= 1 && self.degrees.len() == n, || "basis must start with the unit".into())?;
        self.check(self.degrees[0] == 0 && self.d[0].is_empty(), || "unit must be a degree-0 cycle".into())?;
        if let Some(i) = (0..n).find(|&i| self.degrees[i] > 0) {
            return Err(Error::Axiom(format!("{} has positive degree", self.labels[i])));
        }
        if let Some(w) = &self.weights {
            self.check(w.len() == n && w[0] == 0 && w[1..].iter().all(|x| *x > 0), || {
                "weights: unit in weight 0, ideal in positive weights".into()
            })?;
        }
        for i in 0..n {
            self.check(self.homogeneous(&self.d[i], self.degrees[i] + 1, self.weight(i)), || {
                format!("d({}) is not homogeneous of degree +1", self.labels[i])
            })?;
            self.check(!self.d[i].contains_key(&0), || format!("d({}) leaves the ideal", self.labels[i]))?;
        }
        for ((i, j), v) in &self.mult {
            self.check(*i > 0 && *j > 0 && *i < n && *j < n && !v.contains_key(&0), || {
                "products of ideal elements must stay in the ideal".into()
            })?;
            let w = self.weights.as_ref().map(|w| w[*i] + w[*j]);
            self.check(self.homogeneous(v, self.degrees[*i] + self.degrees[*j], w), || {
                format!("{}·{} is not homogeneous", self.labels[*i], self.labels[*j])
            })?;
        }
        for i in 1..n {
            for j in 1..n {
                let s = koszul(self.degrees[i], self.degrees[j]);
                self.check(self.product(i, j) == scaled(&self.product(j, i), &s), || {
                    format!("graded commutativity fails on {}, {}", self.labels[i], self.labels[j])
                })?;
                let lhs = self.apply_d(&self.product(i, j));
                let mut rhs = self.multiply(&self.d[i], &unit(j));
                axpy(&mut rhs, &sign(self.degrees[i] as i64), &self.multiply(&unit(i), &self.d[j]));
                self.check(lhs == rhs, || format!("Leibniz fails on {}, {}", self.labels[i], self.labels[j]))?;
                for k in 1..n {
                    let l = self.multiply(&self.product(i, j), &unit(k));
                    let r = self.multiply(&unit(i), &self.product(j, k));
                    self.check(l == r, || {
                        format!("associativity fails on {}, {}, {}", self.labels[i], self.labels[j], self.labels[k])
                    })?;
                }
            }
        }
        for i in 0..n {
            self.check(self.apply_d(&self.d[i]).is_empty(), || format!("d∘d ≠ 0 on {}", self.labels[i]))?;
        }
        Ok(())
    }

    /// Smallest `N` with `m^N = 0`.
    pub fn nilpotency_order(&self) -> Result<u32> {
        let n = self.dim();
        let mut power: Vec<SparseVec> = (1..n).map(unit).collect();
        let mut order = 1;
        while !power.is_empty() {
            if order > n as u32 {
                return Err(Error::NotArtinian("augmentation ideal is not nilpotent".into()));
            }
            let mut next = Span::new();
            for v in &power {
                for i in 1..n {
                    next.insert(self.multiply(&unit(i), v));
                }
            }
            power = next.into_reduced(n).rows;
            order += 1;
        }
        Ok(order)
    }

    /// `A ⊕ (A ⊗ V)`, the free module on `V` made square-zero. `V` carries
    /// labels, degrees ≤ 0 and a differential with constant coefficients;
    /// module generators get weight 1 on top of the weight of `A`.
    pub fn square_zero(a: &Self, v_labels: &[String], v_degrees: &[i32], v_d: &[SparseVec]) -> Result<Self> {
        if let Some(k) = v_degrees.iter().position(|d| *d > 0) {
            return Err(Error::Invalid(format!("module generator {} has positive degree", v_labels[k])));
        }
        let na = a.dim();
        let nv = v_labels.len();
        let idx = |i: usize, j: usize| na + i * nv + j;
        let mut labels = a.labels.clone();
        let mut degrees = a.degrees.clone();
        let mut weights = a.weights.clone();
        for i in 0..na {
            for j in 0..nv {
                labels.push(if i == 0 {
                    v_labels[j].clone()
                } else {
                    format!("{}·{}", a.labels[i], v_labels[j])
                });
                degrees.push(a.degrees[i] + v_degrees[j]);
                if let Some(w) = weights.as_mut() {
                    w.push(a.weight(i).unwrap_or(0) + 1);
                }
            }
        }
        let mut mult = a.mult.clone();
        for i in 0..na {
            for j in 0..nv {
                for k in 1..na {
                    // b_k · (b_i ⊗ v_j) and its mirror
                    let p = a.product(k, i);
                    let left: SparseVec = p.iter().map(|(t, c)| (idx(*t, j), c.clone())).collect();
                    let s = koszul(a.degrees[k], a.degrees[i] + v_degrees[j]);
                    mult.insert((idx(i, j), k), scaled(&left, &s));
                    mult.insert((k, idx(i, j)), left);
                }
            }
        }
        let mut d = a.d.clone();
        for i in 0..na {
            let s = sign(a.degrees[i] as i64);
            for j in 0..nv {
                let mut col = SparseVec::new();
                for (t, c) in &a.d[i] {
                    add_entry(&mut col, idx(*t, j), c.clone());
                }
                for (t, c) in v_d.get(j).into_iter().flatten() {
                    add_entry(&mut col, idx(i, *t), &s * c);
                }
                d.push(col);
            }
        }
        Self::new(labels, degrees, weights, mult, d)
    }

    /// `ℚ ⊕ ℚ ε_n` with `ε_n` in degree `-n`.
    pub fn eps(n: u32) -> Self {
        let label = if n == 0 { "ε".to_string() } else { format!("ε{n}") };
        Self::square_zero(&Self::base(), &[label], &[-(n as i32)], &[]).expect("square-zero extension")
    }

    /// `ℚ[x]/x^k`, `x` in degree 0 and weight 1.
    pub fn truncated_polynomial(k: u32) -> Self {
        let labels: Vec<String> = (0..k)
            .map(|i| match i {
                0 => "1".into(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            })
            .collect();
        let mut mult = BTreeMap::new();
        for i in 1..k {
            for j in 1..k {
                if i + j < k {
                    mult.insert((i as usize, j as usize), unit((i + j) as usize));
                }
            }
        }
        Self::new(labels, vec![0; k as usize], Some((0..k).collect()), mult, vec![]).expect("truncated polynomial")
    }
}

/// An algebra map in structure-constant form.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    pub source: ArtinianAlgebra,
    pub target: ArtinianAlgebra,
    pub images: Vec<SparseVec>,
}

impl AlgebraMap {
    pub fn new(source: ArtinianAlgebra, target: ArtinianAlgebra, images: Vec<SparseVec>) -> Result<Self> {
        let f = Self {
            source,
            target,
            images,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v {
            axpy(&mut out, c, &self.images[*i]);
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let bad = |m: String| Err(Error::NotChainMap(m));
        if self.images.len() != s.dim() || self.images[0] != unit(0) {
            return bad("algebra map must send the unit to the unit".into());
        }
        for i in 0..s.dim() {
            if self.images[i].keys().any(|k| t.degrees[*k] != s.degrees[i]) {
                return bad(format!("image of {} has the wrong degree", s.labels[i]));
            }
            if i > 0 && self.images[i].contains_key(&0) {
                return bad(format!("image of {} leaves the ideal", s.labels[i]));
            }
            if self.apply(&s.d[i]) != t.apply_d(&self.images[i]) {
                return bad(format!("map does not commute with d on {}", s.labels[i]));
            }
            for j in 0..s.dim() {
                if self.apply(&s.product(i, j)) != t.multiply(&self.images[i], &self.images[j]) {
                    return bad(format!("map is not multiplicative on {}, {}", s.labels[i], s.labels[j]));
                }
            }
        }
        Ok(())
    }
}

/// `B ×_C D` for `f : B → C`, `g : D → C`, with its two projections.
pub fn fiber_product(f: &AlgebraMap, g: &AlgebraMap) -> Result<(ArtinianAlgebra, AlgebraMap, AlgebraMap)> {
    if f.target != g.target {
        return Err(Error::Invalid("fiber product over different algebras".into()));
    }
    let (b, dd, c) = (&f.source, &g.source, &f.target);
    let nb = b.dim();
    let pair_degree = |k: usize| if k < nb { b.degrees[k] } else { dd.degrees[k - nb] };
    let pair_weight = |k: usize| -> Option<u32> {
        match (&b.weights, &dd.weights) {
            (Some(wb), Some(wd)) => Some(if k < nb { wb[k] } else { wd[k - nb] }),
            _ => None,
        }
    };
    let embed_d = |v: &SparseVec| -> SparseVec { v.iter().map(|(k, x)| (k + nb, x.clone())).collect() };
    // θ(b, d) = f(b) - g(d) on the ideals, per homogeneous block
    let mut blocks: BTreeMap<(i32, Option<u32>), Vec<usize>> = BTreeMap::new();
    for k in (1..nb).chain(nb + 1..nb + dd.dim()) {
        blocks.entry((pair_degree(k), pair_weight(k))).or_default().push(k);
    }
    let mut basis: Vec<SparseVec> = vec![{
        let mut u = unit(0);
        u.insert(nb, Q::from_integer(1.into()));
        u
    }];
    for cols in blocks.values() {
        let images: Vec<SparseVec> = cols
            .iter()
            .map(|&k| {
                if k < nb {
                    f.images[k].clone()
                } else {
                    scaled(&g.images[k - nb], &-Q::from_integer(1.into()))
                }
            })
            .collect();
        let m = Matrix::from_columns(c.dim(), &images);
        for kv in m.kernel() {
            basis.push(kv.iter().map(|(j, x)| (cols[*j], x.clone())).collect());
        }
    }
    let mut span = CoordSpan::new();
    for v in &basis {
        span.insert(v);
    }
    let pair_mul = |u: &SparseVec, v: &SparseVec| -> SparseVec {
        let split = |w: &SparseVec| -> (SparseVec, SparseVec) {
            (
                w.iter().filter(|(k, _)| **k < nb).map(|(k, x)| (*k, x.clone())).collect(),
                w.iter().filter(|(k, _)| **k >= nb).map(|(k, x)| (k - nb, x.clone())).collect(),
            )
        };
        let (ub, ud) = split(u);
        let (vb, vd) = split(v);
        let mut out = b.multiply(&ub, &vb);
        axpy(&mut out, &Q::from_integer(1.into()), &embed_d(&dd.multiply(&ud, &vd)));
        out
    };
    let pair_d = |u: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (k, x) in u {
            let col = if *k < nb { b.d[*k].clone() } else { embed_d(&dd.d[k - nb]) };
            axpy(&mut out, x, &col);
        }
        out
    };
    let express = |v: &SparseVec| -> Result<SparseVec> {
        span.express(v)
            .ok_or_else(|| Error::Invalid("fiber product is not closed under the operations".into()))
    };
    let n = basis.len();
    let mut mult = BTreeMap::new();
    for i in 1..n {
        for j in 1..n {
            let p = express(&pair_mul(&basis[i], &basis[j]))?;
            if !p.is_empty() {
                mult.insert((i, j), p);
            }
        }
    }
    let d: Vec<SparseVec> = basis.iter().map(|v| express(&pair_d(v))).collect::<Result<_>>()?;
    let lead = |v: &SparseVec| -> usize { *v.keys().next().expect("nonzero basis vector") };
    let label_of = |v: &SparseVec| -> String {
        let terms: Vec<String> = v
            .iter()
            .map(|(k, x)| {
                let l = if *k < nb {
                    format!("{}_B", b.labels[*k])
                } else {
                    format!("{}_D", dd.labels[k - nb])
                };
                crate::rational::format_coeff(x, &l)
            })
            .collect();
        terms.join(" + ")
    };
    let mut labels = vec!["1".to_string()];
    labels.extend(basis[1..].iter().map(label_of));
    let degrees: Vec<i32> = basis.iter().map(|v| pair_degree(lead(v))).collect();
    let weights: Option<Vec<u32>> = match (&b.weights, &dd.weights) {
        (Some(_), Some(_)) => Some(
            std::iter::once(0)
                .chain(basis[1..].iter().map(|v| pair_weight(lead(v)).expect("graded")))
                .collect(),
        ),
        _ => None,
    };
    let p = ArtinianAlgebra::new(labels, degrees, weights, mult, d)?;
    let proj = |from: &ArtinianAlgebra, keep_b: bool| -> Result<AlgebraMap> {
        let images = basis
            .iter()
            .map(|v| {
                v.iter()
                    .filter(|(k, _)| (**k < nb) == keep_b)
                    .map(|(k, x)| (if keep_b { *k } else { k - nb }, x.clone()))
                    .collect()
            })
            .collect();
        AlgebraMap::new(p.clone(), from.clone(), images)
    };
    let pb = proj(b, true)?;
    let pd = proj(dd, false)?;
    Ok((p, pb, pd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn square_zero_examples() {
        let e = ArtinianAlgebra::eps(0);
        assert_eq!(e.dim(), 2);
        assert_eq!(e.nilpotency_order().unwrap(), 2);
        let e2 = ArtinianAlgebra::eps(2);
        assert_eq!(e2.degrees, vec![0, -2]);
        let trivial = ArtinianAlgebra::square_zero(&ArtinianAlgebra::base(), &[], &[], &[]).unwrap();
        assert_eq!(trivial, ArtinianAlgebra::base());
        assert!(ArtinianAlgebra::square_zero(&ArtinianAlgebra::base(), &["m".into()], &[1], &[]).is_err());
    }

    #[test]
    fn square_zero_over_dual_numbers() {
        let a = ArtinianAlgebra::eps(0);
        let b = ArtinianAlgebra::square_zero(&a, &["u".into(), "v".into()], &[-1, 0], &[unit(1)]).unwrap();
        assert_eq!(b.dim(), 6);
        // ε·u = ε·u, u·v = 0
        let u = b.labels.iter().position(|l| l == "u").unwrap();
        let v = b.labels.iter().position(|l| l == "v").unwrap();
        assert!(b.product(u, v).is_empty());
        assert_eq!(b.nilpotency_order().unwrap(), 3);
    }

    #[test]
    fn truncated_polynomials() {
        assert_eq!(ArtinianAlgebra::truncated_polynomial(3).nilpotency_order().unwrap(), 3);
        assert_eq!(ArtinianAlgebra::truncated_polynomial(1), ArtinianAlgebra::base());
    }

    #[test]
    fn idempotent_is_not_artinian() {
        let mult: BTreeMap<_, _> = [((1, 1), unit(1))].into();
        let labels = vec!["1".to_string(), "e".to_string()];
        assert!(ArtinianAlgebra::new(labels.clone(), vec![0, 0], Some(vec![0, 1]), mult.clone(), vec![]).is_err());
        let a = ArtinianAlgebra::new(labels, vec![0, 0], None, mult, vec![]).unwrap();
        assert!(matches!(a.nilpotency_order(), Err(Error::NotArtinian(_))));
    }

    #[test]
    fn broken_commutativity_is_rejected() {
        let mult: BTreeMap<_, _> = [((1, 2), unit(3))].into();
        let labels = ["1", "x", "y", "z"].map(String::from).to_vec();
        assert!(ArtinianAlgebra::new(labels, vec![0; 4], None, mult, vec![]).is_err());
    }

    #[test]
    fn fiber_product_of_dual_numbers() {
        // ℚ[x]/x³ → ℚ[ε]/ε², x ↦ ε, fibered with ℚ → ℚ[ε]/ε²
        let b = ArtinianAlgebra::truncated_polynomial(3);
        let c = ArtinianAlgebra::eps(0);
        let f = AlgebraMap::new(b.clone(), c.clone(), vec![unit(0), unit(1), SparseVec::new()]).unwrap();
        let g = AlgebraMap::new(ArtinianAlgebra::base(), c, vec![unit(0)]).unwrap();
        let (p, pb, _) = fiber_product(&f, &g).unwrap();
        // {1, x²}: a square-zero extension in weight 2
        assert_eq!(p.dim(), 2);
        assert_eq!(p.weights, Some(vec![0, 2]));
        assert_eq!(pb.images[1], [(2, q(1))].into());
    }
}
