//! Digital images in `Z^n` with maximal adjacency, and maps between them.
//!
//! Adjacency is never stored: two lattice points are adjacent exactly when they
//! are distinct and every coordinate differs by at most one. Products of images
//! concatenate coordinates, so the adjacency on a product is the strong product
//! for free.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A point of the integer lattice `Z^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        Ok(LatticePoint(coords))
    }

    /// Callers guarantee `coords` is nonempty.
    pub(crate) fn from_vec(coords: Vec<i64>) -> Self {
        debug_assert!(!coords.is_empty());
        LatticePoint(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn coord(&self, axis: usize) -> i64 {
        self.0[axis]
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    /// Concatenates coordinates, giving the point `(self, other)` of a product.
    pub fn concat(&self, other: &LatticePoint) -> LatticePoint {
        let mut coords = Vec::with_capacity(self.dim() + other.dim());
        coords.extend_from_slice(&self.0);
        coords.extend_from_slice(&other.0);
        LatticePoint(coords)
    }

    /// Coordinates `range` as a point of a factor.
    pub fn slice(&self, range: std::ops::Range<usize>) -> LatticePoint {
        LatticePoint::from_vec(self.0[range].to_vec())
    }

    pub fn map_coords(&self, mut f: impl FnMut(usize, i64) -> i64) -> LatticePoint {
        LatticePoint(self.0.iter().enumerate().map(|(i, &c)| f(i, c)).collect())
    }

    /// Chebyshev distance; both points must share a dimension.
    pub(crate) fn chebyshev(&self, other: &LatticePoint) -> i64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or(0)
    }

    /// Adjacent or equal, without the dimension check.
    pub(crate) fn touches(&self, other: &LatticePoint) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(&other.0).all(|(a, b)| (a - b).abs() <= 1)
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(coords: [i64; N]) -> Self {
        assert!(N > 0, "lattice points need at least one coordinate");
        LatticePoint(coords.to_vec())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Strict adjacency: distinct points whose coordinates differ by at most one.
pub fn adjacent(p: &LatticePoint, q: &LatticePoint) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    Ok(p != q && p.touches(q))
}

struct ImageData {
    dim: usize,
    points: Vec<LatticePoint>,
    index: HashMap<LatticePoint, usize>,
}

/// A finite nonempty subset of `Z^dim`. Points are kept in lexicographic order.
#[derive(Clone)]
pub struct DigitalImage(Arc<ImageData>);

impl DigitalImage {
    pub fn new(dim: usize, points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyPoint);
        }
        let mut points: Vec<LatticePoint> = points.into_iter().collect();
        if points.is_empty() {
            return Err(Error::EmptyImage);
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].clone()));
        }
        Ok(Self::from_sorted(dim, points))
    }

    /// Builds an image from points known to be distinct, nonempty and of dimension `dim`.
    pub(crate) fn from_distinct(dim: usize, mut points: Vec<LatticePoint>) -> Self {
        points.sort();
        debug_assert!(!points.is_empty());
        debug_assert!(points.windows(2).all(|w| w[0] != w[1]));
        Self::from_sorted(dim, points)
    }

    fn from_sorted(dim: usize, points: Vec<LatticePoint>) -> Self {
        let index = points
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        DigitalImage(Arc::new(ImageData { dim, points, index }))
    }

    /// The digital interval `I_n = {0, ..., n}` in `Z`.
    pub fn interval(n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::InvalidArgument(format!(
                "interval length {n} is negative"
            )));
        }
        Ok(Self::from_sorted(
            1,
            (0..=n).map(|i| LatticePoint(vec![i])).collect(),
        ))
    }

    /// The rectangle `I_m x I_n` in `Z^2`.
    pub fn rectangle(m: i64, n: i64) -> Result<Self> {
        Ok(Self::interval(m)?.product(&Self::interval(n)?))
    }

    /// The four-point digital circle `{(1,0), (0,1), (-1,0), (0,-1)}`.
    pub fn diamond() -> Self {
        Self::from_distinct(
            2,
            vec![
                LatticePoint(vec![1, 0]),
                LatticePoint(vec![0, 1]),
                LatticePoint(vec![-1, 0]),
                LatticePoint(vec![0, -1]),
            ],
        )
    }

    pub fn singleton(p: LatticePoint) -> Self {
        let dim = p.dim();
        Self::from_sorted(dim, vec![p])
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn len(&self) -> usize {
        self.0.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.0.points
    }

    pub fn point(&self, index: usize) -> &LatticePoint {
        &self.0.points[index]
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.0.index.contains_key(p)
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.0.index.get(p).copied()
    }

    pub fn is_subset_of(&self, other: &DigitalImage) -> bool {
        self.dim() == other.dim() && self.points().iter().all(|p| other.contains(p))
    }

    /// Indices of the points adjacent to `p`, in increasing order. `p` need not be in the image.
    pub fn neighbor_indices(&self, p: &LatticePoint) -> Vec<usize> {
        let dim = self.dim();
        let mut out = Vec::new();
        if dim > 12 || self.len() < 3usize.pow(dim as u32) {
            for (i, q) in self.points().iter().enumerate() {
                if q != p && q.touches(p) {
                    out.push(i);
                }
            }
            return out;
        }
        let mut offset = vec![-1i64; dim];
        loop {
            if offset.iter().any(|&o| o != 0) {
                let q = LatticePoint(p.0.iter().zip(&offset).map(|(a, o)| a + o).collect());
                if let Some(i) = self.index_of(&q) {
                    out.push(i);
                }
            }
            let mut axis = dim;
            loop {
                if axis == 0 {
                    out.sort_unstable();
                    return out;
                }
                axis -= 1;
                if offset[axis] < 1 {
                    offset[axis] += 1;
                    break;
                }
                offset[axis] = -1;
            }
        }
    }

    pub fn neighbors(&self, p: &LatticePoint) -> Vec<&LatticePoint> {
        self.neighbor_indices(p)
            .into_iter()
            .map(|i| self.point(i))
            .collect()
    }

    /// All adjacent pairs `(p, q)` with `p < q`, in lexicographic order.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, p) in self.points().iter().enumerate() {
            for j in self.neighbor_indices(p) {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Cartesian product with concatenated coordinates.
    pub fn product(&self, other: &DigitalImage) -> DigitalImage {
        let mut points = Vec::with_capacity(self.len() * other.len());
        for p in self.points() {
            for q in other.points() {
                points.push(p.concat(q));
            }
        }
        Self::from_sorted(self.dim() + other.dim(), points)
    }

    /// Coordinate-wise bounding box `(min, max)`.
    pub fn bounds(&self) -> (Vec<i64>, Vec<i64>) {
        let dim = self.dim();
        let mut lo = vec![i64::MAX; dim];
        let mut hi = vec![i64::MIN; dim];
        for p in self.points() {
            for (axis, &c) in p.coords().iter().enumerate() {
                lo[axis] = lo[axis].min(c);
                hi[axis] = hi[axis].max(c);
            }
        }
        (lo, hi)
    }
}

impl PartialEq for DigitalImage {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.dim() == other.dim() && self.points() == other.points())
    }
}

impl Eq for DigitalImage {}

impl fmt::Debug for DigitalImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DigitalImage(dim={}, ", self.dim())?;
        f.debug_set().entries(self.points()).finish()?;
        write!(f, ")")
    }
}

/// The product image `X x Y`.
pub fn product_image(x: &DigitalImage, y: &DigitalImage) -> DigitalImage {
    x.product(y)
}

/// A total function between digital images, stored as a table over the domain's points.
///
/// Continuity is a property to query, not a construction invariant.
#[derive(Clone)]
pub struct DigitalMap {
    domain: DigitalImage,
    codomain: DigitalImage,
    table: Arc<[usize]>,
}

impl DigitalMap {
    pub fn from_fn(
        domain: &DigitalImage,
        codomain: &DigitalImage,
        mut f: impl FnMut(&LatticePoint) -> LatticePoint,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(domain.len());
        for p in domain.points() {
            let value = f(p);
            match codomain.index_of(&value) {
                Some(j) => table.push(j),
                None => {
                    return Err(Error::ValueOutsideCodomain {
                        point: p.clone(),
                        value,
                    })
                }
            }
        }
        Ok(Self::from_table(domain.clone(), codomain.clone(), table))
    }

    pub fn try_from_fn(
        domain: &DigitalImage,
        codomain: &DigitalImage,
        mut f: impl FnMut(&LatticePoint) -> Result<LatticePoint>,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(domain.len());
        for p in domain.points() {
            let value = f(p)?;
            match codomain.index_of(&value) {
                Some(j) => table.push(j),
                None => {
                    return Err(Error::ValueOutsideCodomain {
                        point: p.clone(),
                        value,
                    })
                }
            }
        }
        Ok(Self::from_table(domain.clone(), codomain.clone(), table))
    }

    /// Builds a map from explicit `(point, value)` pairs. Every domain point must appear
    /// exactly once.
    pub fn from_pairs(
        domain: &DigitalImage,
        codomain: &DigitalImage,
        pairs: impl IntoIterator<Item = (LatticePoint, LatticePoint)>,
    ) -> Result<Self> {
        let mut table: Vec<Option<usize>> = vec![None; domain.len()];
        for (p, value) in pairs {
            let i = domain
                .index_of(&p)
                .ok_or_else(|| Error::NotInImage(p.clone()))?;
            let j = codomain
                .index_of(&value)
                .ok_or_else(|| Error::ValueOutsideCodomain {
                    point: p.clone(),
                    value: value.clone(),
                })?;
            if table[i].replace(j).is_some() {
                return Err(Error::DuplicatePoint(p));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, j)| j.ok_or_else(|| Error::MissingValue(domain.point(i).clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_table(domain.clone(), codomain.clone(), table))
    }

    pub(crate) fn from_table(
        domain: DigitalImage,
        codomain: DigitalImage,
        table: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(table.len(), domain.len());
        DigitalMap {
            domain,
            codomain,
            table: table.into(),
        }
    }

    pub fn identity(x: &DigitalImage) -> Self {
        Self::from_table(x.clone(), x.clone(), (0..x.len()).collect())
    }

    pub fn constant(
        domain: &DigitalImage,
        codomain: &DigitalImage,
        value: &LatticePoint,
    ) -> Result<Self> {
        let j = codomain
            .index_of(value)
            .ok_or_else(|| Error::NotInImage(value.clone()))?;
        Ok(Self::from_table(
            domain.clone(),
            codomain.clone(),
            vec![j; domain.len()],
        ))
    }

    /// The inclusion `A -> X` of a subimage.
    pub fn inclusion(sub: &DigitalImage, whole: &DigitalImage) -> Result<Self> {
        if sub.dim() != whole.dim() {
            return Err(Error::DimensionMismatch {
                expected: whole.dim(),
                found: sub.dim(),
            });
        }
        Self::from_fn(sub, whole, |p| p.clone()).map_err(|e| match e {
            Error::ValueOutsideCodomain { value, .. } => Error::NotInImage(value),
            e => e,
        })
    }

    pub fn domain(&self) -> &DigitalImage {
        &self.domain
    }

    pub fn codomain(&self) -> &DigitalImage {
        &self.codomain
    }

    pub fn apply(&self, p: &LatticePoint) -> Option<&LatticePoint> {
        self.domain.index_of(p).map(|i| self.value_at(i))
    }

    /// The value at the `i`-th domain point.
    pub fn value_at(&self, i: usize) -> &LatticePoint {
        self.codomain.point(self.table[i])
    }

    pub(crate) fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&LatticePoint, &LatticePoint)> + '_ {
        self.domain
            .points()
            .iter()
            .zip(self.table.iter())
            .map(move |(p, &j)| (p, self.codomain.point(j)))
    }

    /// The lexicographically least adjacent pair `(x, x')`, `x < x'`, whose images are
    /// neither equal nor adjacent.
    pub fn first_discontinuity(&self) -> Option<(LatticePoint, LatticePoint)> {
        for (i, p) in self.domain.points().iter().enumerate() {
            let fp = self.value_at(i);
            for j in self.domain.neighbor_indices(p) {
                if j > i && !fp.touches(self.value_at(j)) {
                    return Some((p.clone(), self.domain.point(j).clone()));
                }
            }
        }
        None
    }

    pub fn is_continuous(&self) -> bool {
        self.first_discontinuity().is_none()
    }

    pub fn ensure_continuous(&self) -> Result<()> {
        match self.first_discontinuity() {
            None => Ok(()),
            Some((p, q)) => Err(Error::Discontinuous(p, q)),
        }
    }

    /// Same domain and same values, ignoring the declared codomain.
    pub fn same_values(&self, other: &DigitalMap) -> bool {
        self.domain == other.domain
            && (0..self.domain.len()).all(|i| self.value_at(i) == other.value_at(i))
    }

    /// The same table viewed with a different codomain that contains all values.
    pub fn with_codomain(&self, codomain: &DigitalImage) -> Result<Self> {
        Self::from_fn(&self.domain, codomain, |p| {
            self.apply(p).expect("domain point").clone()
        })
    }
}

impl PartialEq for DigitalMap {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.table == other.table
    }
}

impl Eq for DigitalMap {}

impl fmt::Debug for DigitalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

/// `g ∘ f`. The codomain of `f` must equal the domain of `g`.
pub fn compose(g: &DigitalMap, f: &DigitalMap) -> Result<DigitalMap> {
    if f.codomain() != g.domain() {
        return Err(Error::ImageMismatch(
            "codomain of the first map differs from the domain of the second".into(),
        ));
    }
    let table = f.table().iter().map(|&j| g.table()[j]).collect();
    Ok(DigitalMap::from_table(
        f.domain().clone(),
        g.codomain().clone(),
        table,
    ))
}

/// The two projections `X x Y -> X` and `X x Y -> Y`.
pub fn product_projections(x: &DigitalImage, y: &DigitalImage) -> (DigitalMap, DigitalMap) {
    let xy = x.product(y);
    let split = x.dim();
    let total = xy.dim();
    let p1 = DigitalMap::from_fn(&xy, x, |p| p.slice(0..split)).expect("first factor");
    let p2 = DigitalMap::from_fn(&xy, y, |p| p.slice(split..total)).expect("second factor");
    (p1, p2)
}

/// The map `(f, g): A -> X x Y`, `a ↦ (f(a), g(a))`.
pub fn pair_map(f: &DigitalMap, g: &DigitalMap) -> Result<DigitalMap> {
    if f.domain() != g.domain() {
        return Err(Error::ImageMismatch(
            "paired maps must share a domain".into(),
        ));
    }
    let target = f.codomain().product(g.codomain());
    DigitalMap::from_fn(f.domain(), &target, |p| {
        f.apply(p)
            .expect("domain point")
            .concat(g.apply(p).expect("domain point"))
    })
}

/// `f_1 x ... x f_n`, acting factor-wise on concatenated coordinates.
pub fn product_map(maps: &[DigitalMap]) -> Result<DigitalMap> {
    let (first, rest) = maps
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("product of no maps".into()))?;
    let mut domain = first.domain().clone();
    let mut codomain = first.codomain().clone();
    for m in rest {
        domain = domain.product(m.domain());
        codomain = codomain.product(m.codomain());
    }
    DigitalMap::from_fn(&domain, &codomain, |p| {
        let mut coords = Vec::with_capacity(codomain.dim());
        let mut offset = 0;
        for m in maps {
            let d = m.domain().dim();
            let factor = p.slice(offset..offset + d);
            coords.extend_from_slice(m.apply(&factor).expect("factor point").coords());
            offset += d;
        }
        LatticePoint::from_vec(coords)
    })
}

/// The diagonal `X -> X x X`.
pub fn diagonal(x: &DigitalImage) -> DigitalMap {
    let id = DigitalMap::identity(x);
    pair_map(&id, &id).expect("identity maps share a domain")
}
