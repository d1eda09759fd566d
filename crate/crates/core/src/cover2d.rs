//! Covers of maps with two-dimensional domains at odd factors `2k+1`.
//!
//! Centres go to centres, the horizontal and vertical spokes of each block interpolate
//! toward the neighbouring centres, and every square whose corners are centres is filled
//! quadrant by quadrant with the coordinate-centring interpolant. Even factors are reached
//! through the partial projection.
//!
//! Local coordinates for a square: its corners are `0̄ = k` and `1̄ = 3k+1` on each axis,
//! and the quadrant of a corner `v` is `{ (C^s(v̄_1), C^t(v̄_2)) : 0 <= s, t <= k }`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cover1d::{cover_path_odd, DigitalPath};
use crate::digital::{DigitalImage, DigitalMap, LatticePoint};
use crate::error::{Error, Result};
use crate::oracle::verify_cover;
use crate::subdivision::{centre, cover_via_partial_projection, project_point, subdivided_image};

/// The coordinate-centring function `C` on `[k, 3k+1]`.
pub fn centring(k: i64, x: i64) -> Result<i64> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!(
            "centring needs k >= 1, got {k}"
        )));
    }
    if x < k || x > 3 * k + 1 {
        return Err(Error::InvalidArgument(format!(
            "{x} is outside the centring range [{k}, {}]",
            3 * k + 1
        )));
    }
    Ok(if x < 2 * k {
        x + 1
    } else if x <= 2 * k + 1 {
        x
    } else {
        x - 1
    })
}

/// `C^s(x)`.
pub fn centring_pow(k: i64, s: u32, x: i64) -> Result<i64> {
    let mut y = centring(k, x)?;
    if s == 0 {
        return Ok(x);
    }
    for _ in 1..s {
        y = centring(k, y)?;
    }
    Ok(y)
}

/// `C^s` applied to the corner value `0̄` or `1̄`. Only valid for `s <= k`, where it is a
/// straight walk toward the middle.
fn centred_corner(k: i64, bit: i64, s: i64) -> i64 {
    debug_assert!((0..=k).contains(&s));
    if bit == 0 {
        k + s
    } else {
        3 * k + 1 - s
    }
}

/// A corner of the unit square `[0, 1]^2`.
pub type Corner = (u8, u8);

pub const CORNERS: [Corner; 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

/// A nonempty set of corners of `[0, 1]^2` with values in the unit cube `{0, 1}^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerData {
    dim: usize,
    values: BTreeMap<Corner, Vec<i64>>,
}

impl CornerData {
    pub fn new(values: impl IntoIterator<Item = (Corner, Vec<i64>)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut dim = None;
        for (corner, value) in values {
            if corner.0 > 1 || corner.1 > 1 {
                return Err(Error::InvalidArgument(format!(
                    "{corner:?} is not a corner of the unit square"
                )));
            }
            if value.is_empty() || value.iter().any(|&c| c != 0 && c != 1) {
                return Err(Error::InvalidArgument(format!(
                    "corner value {value:?} is not a vertex of the unit cube"
                )));
            }
            match dim {
                None => dim = Some(value.len()),
                Some(d) if d != value.len() => {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: value.len(),
                    })
                }
                _ => {}
            }
            if map.insert(corner, value).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "corner {corner:?} given twice"
                )));
            }
        }
        let dim =
            dim.ok_or_else(|| Error::InvalidArgument("corner set must be nonempty".into()))?;
        Ok(CornerData { dim, values: map })
    }

    /// Target dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn corners(&self) -> impl Iterator<Item = Corner> + '_ {
        self.values.keys().copied()
    }

    pub fn value(&self, corner: Corner) -> Option<&[i64]> {
        self.values.get(&corner).map(Vec::as_slice)
    }

    /// The value at `(s, t)` of the quadrant of `v`, in local coordinates of `[0̄, 1̄]^n`.
    fn quadrant_value(&self, k: i64, v: Corner, s: i64, t: i64) -> Vec<i64> {
        let fv = &self.values[&v];
        let across = self.value((1 - v.0, v.1));
        let up = self.value((v.0, 1 - v.1));
        (0..self.dim)
            .map(|i| {
                let moves = if t <= s {
                    if across.is_some_and(|w| w[i] != fv[i]) {
                        s
                    } else {
                        t
                    }
                } else if up.is_some_and(|w| w[i] != fv[i]) {
                    t
                } else {
                    s
                };
                centred_corner(k, fv[i], moves)
            })
            .collect()
    }

    /// Every point of `[0̄, 1̄]^2 ∩ S(V, 2k+1)` with its local value, quadrant by quadrant.
    fn fill(&self, k: i64) -> Vec<([i64; 2], Vec<i64>)> {
        let mut out = Vec::with_capacity(self.values.len() * ((k + 1) * (k + 1)) as usize);
        for v in self.corners() {
            for s in 0..=k {
                for t in 0..=k {
                    let p = [
                        centred_corner(k, v.0 as i64, s),
                        centred_corner(k, v.1 as i64, t),
                    ];
                    out.push((p, self.quadrant_value(k, v, s, t)));
                }
            }
        }
        out
    }
}

/// The square `[0̄, 1̄]^2 = [k, 3k+1]^2` restricted to the quadrants of the corners in `V`.
pub fn unit_square_domain(
    corners: impl IntoIterator<Item = Corner>,
    k: i64,
) -> Result<DigitalImage> {
    let mut points = Vec::new();
    for v in corners {
        for s in 0..=k {
            for t in 0..=k {
                points.push(LatticePoint::from([
                    centred_corner(k, v.0 as i64, s),
                    centred_corner(k, v.1 as i64, t),
                ]));
            }
        }
    }
    DigitalImage::new(2, points)
}

/// The cube `[0̄, 1̄]^n = [k, 3k+1]^n`.
pub fn unit_cube_target(n: usize, k: i64) -> DigitalImage {
    let side = DigitalImage::new(1, (k..=3 * k + 1).map(|c| LatticePoint::from([c])))
        .expect("nonempty side");
    let mut cube = side.clone();
    for _ in 1..n {
        cube = cube.product(&side);
    }
    cube
}

/// Extends corner data over the quadrants of `[0̄, 1̄]^2` belonging to the given corners.
pub fn extend_unit_square(data: &CornerData, k: i64) -> Result<DigitalMap> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!(
            "k must be at least 1, got {k}"
        )));
    }
    let domain = unit_square_domain(data.corners(), k)?;
    let codomain = unit_cube_target(data.dim(), k);
    let values: BTreeMap<LatticePoint, LatticePoint> = data
        .fill(k)
        .into_iter()
        .map(|(p, v)| (LatticePoint::from(p), LatticePoint::from_vec(v)))
        .collect();
    DigitalMap::from_fn(&domain, &codomain, |p| values[p].clone())
}

/// A map `H: I_M x I_N -> Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectangleMap {
    width: i64,
    height: i64,
    map: DigitalMap,
}

impl RectangleMap {
    /// Wraps a map whose domain is `I_M x I_N`. The map must be continuous.
    pub fn new(map: DigitalMap) -> Result<Self> {
        let (lo, hi) = map.domain().bounds();
        if map.domain().dim() != 2 || lo != [0, 0] {
            return Err(Error::ImageMismatch(
                "domain is not a rectangle I_M x I_N".into(),
            ));
        }
        let (width, height) = (hi[0], hi[1]);
        if map.domain() != &DigitalImage::rectangle(width, height)? {
            return Err(Error::ImageMismatch(
                "domain is not a rectangle I_M x I_N".into(),
            ));
        }
        map.ensure_continuous()?;
        Ok(RectangleMap { width, height, map })
    }

    pub fn from_fn(
        width: i64,
        height: i64,
        target: &DigitalImage,
        f: impl FnMut(&LatticePoint) -> LatticePoint,
    ) -> Result<Self> {
        Self::new(DigitalMap::from_fn(
            &DigitalImage::rectangle(width, height)?,
            target,
            f,
        )?)
    }

    pub fn width(&self) -> i64 {
        self.width
    }

    pub fn height(&self) -> i64 {
        self.height
    }

    pub fn map(&self) -> &DigitalMap {
        &self.map
    }

    pub fn at(&self, s: i64, t: i64) -> &LatticePoint {
        self.map
            .apply(&LatticePoint::from([s, t]))
            .expect("point of the rectangle")
    }

    /// The horizontal coordinate curve `s ↦ H(s, t)`.
    pub fn row(&self, t: i64) -> DigitalPath {
        DigitalPath::new(
            self.map.codomain(),
            (0..=self.width).map(|s| self.at(s, t).clone()).collect(),
        )
        .expect("rows of a continuous map are paths")
    }

    /// The vertical coordinate curve `t ↦ H(s, t)`.
    pub fn column(&self, s: i64) -> DigitalPath {
        DigitalPath::new(
            self.map.codomain(),
            (0..=self.height).map(|t| self.at(s, t).clone()).collect(),
        )
        .expect("columns of a continuous map are paths")
    }
}

fn check_domain_2d(f: &DigitalMap) -> Result<()> {
    if f.domain().dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: f.domain().dim(),
        });
    }
    Ok(())
}

fn sign_step(d: i64) -> i64 {
    if d < 0 {
        -1
    } else {
        1
    }
}

/// Values on the centres and on the axis spokes `x̄ + t·e`, `0 <= t <= k`, of every block.
fn spokes(f: &DigitalMap, k: i64, out: &mut BTreeMap<LatticePoint, LatticePoint>) {
    for (x, fx) in f.pairs() {
        let cx = centre(x, k);
        let cfx = centre(fx, k);
        for dir in [[1, 0], [-1, 0], [0, 1], [0, -1]] {
            let neighbour = LatticePoint::from([x.coord(0) + dir[0], x.coord(1) + dir[1]]);
            let fn_ = f.apply(&neighbour);
            for t in 0..=k {
                let z = LatticePoint::from([cx.coord(0) + t * dir[0], cx.coord(1) + t * dir[1]]);
                let value = match fn_ {
                    Some(fy) => cfx.map_coords(|i, c| c + t * (fy.coord(i) - fx.coord(i))),
                    None => cfx.clone(),
                };
                out.insert(z, value);
            }
        }
    }
}

/// Fills the square `[ī, (i+1)‾] x [j̄, (j+1)‾]` over the corners present in the domain.
fn fill_square(f: &DigitalMap, k: i64, i: i64, j: i64) -> Vec<(LatticePoint, LatticePoint)> {
    let present: Vec<(Corner, &LatticePoint)> = CORNERS
        .iter()
        .filter_map(|&v| {
            f.apply(&LatticePoint::from([i + v.0 as i64, j + v.1 as i64]))
                .map(|fv| (v, fv))
        })
        .collect();
    if present.is_empty() {
        return Vec::new();
    }
    let n = f.codomain().dim();
    let floor: Vec<i64> = (0..n)
        .map(|r| {
            present
                .iter()
                .map(|(_, fv)| fv.coord(r))
                .min()
                .expect("nonempty")
        })
        .collect();
    let data = CornerData::new(
        present
            .iter()
            .map(|(v, fv)| (*v, (0..n).map(|r| fv.coord(r) - floor[r]).collect())),
    )
    .expect("corners of a square are pairwise adjacent, so their images fit in a unit cube");
    let m = 2 * k + 1;
    data.fill(k)
        .into_iter()
        .map(|(p, local)| {
            let z = LatticePoint::from([p[0] + m * i, p[1] + m * j]);
            let value =
                LatticePoint::from_vec(local.iter().zip(&floor).map(|(c, a)| c + m * a).collect());
            (z, value)
        })
        .collect()
}

/// Assembles the cover over `S(X, 2k+1)` from spokes and squares. Points where two pieces
/// overlap must receive identical values.
fn assemble(f: &DigitalMap, k: i64) -> Result<BTreeMap<LatticePoint, LatticePoint>> {
    let mut values = BTreeMap::new();
    spokes(f, k, &mut values);
    let (lo, hi) = f.domain().bounds();
    let squares: Vec<(i64, i64)> = (lo[1] - 1..=hi[1])
        .flat_map(|j| (lo[0] - 1..=hi[0]).map(move |i| (i, j)))
        .collect();
    let filled: Vec<Vec<(LatticePoint, LatticePoint)>> = squares
        .par_iter()
        .map(|&(i, j)| fill_square(f, k, i, j))
        .collect();
    for (z, value) in filled.into_iter().flatten() {
        match values.get(&z) {
            Some(existing) if existing != &value => {
                return Err(Error::VerificationFailed(format!(
                    "pieces disagree at {z}: {existing} vs {value}"
                )))
            }
            Some(_) => {}
            None => {
                values.insert(z, value);
            }
        }
    }
    Ok(values)
}

fn checked(f: &DigitalMap, cover: DigitalMap, k_dom: i64, k_cod: i64) -> Result<DigitalMap> {
    let cert = verify_cover(f, &cover, k_dom, k_cod)?;
    if !cert.passed() {
        return Err(Error::VerificationFailed(cert.summary()));
    }
    Ok(cover)
}

/// The cover `f̂: S(X, 2k+1) -> S(Y, 2k+1)` of a continuous map with `X ⊆ Z^2`.
pub fn cover_2d(f: &DigitalMap, k: i64) -> Result<DigitalMap> {
    check_domain_2d(f)?;
    if k < 1 {
        return Err(Error::InvalidArgument(format!(
            "k must be at least 1, got {k}"
        )));
    }
    f.ensure_continuous()?;
    let m = 2 * k + 1;
    let values = assemble(f, k)?;
    let domain = subdivided_image(f.domain(), m)?;
    let codomain = subdivided_image(f.codomain(), m)?;
    let cover = DigitalMap::try_from_fn(&domain, &codomain, |z| {
        values
            .get(z)
            .cloned()
            .ok_or_else(|| Error::VerificationFailed(format!("no value assigned at {z}")))
    })?;
    checked(f, cover, m, m)
}

/// A cover `F: S(X, k+1) -> S(Y, k)` for any `k >= 2`, through the partial projection.
pub fn cover_2d_any(f: &DigitalMap, k: i64) -> Result<DigitalMap> {
    check_domain_2d(f)?;
    let cover = cover_via_partial_projection(f, k, |h| cover_2d(f, h))?;
    checked(f, cover, k + 1, k)
}

/// The cover `Ĥ: S(I_M x I_N, 2k+1) -> S(Y, 2k+1)` of a rectangle map, whose restriction to
/// each edge of the rectangle is the standard cover of the corresponding edge path.
pub fn cover_rectangle(h: &RectangleMap, k: i64) -> Result<DigitalMap> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!(
            "k must be at least 1, got {k}"
        )));
    }
    let m = 2 * k + 1;
    let (width, height) = (h.width(), h.height());
    let left = cover_path_odd(&h.column(0), k)?;
    let right = cover_path_odd(&h.column(width), k)?;
    let bottom = cover_path_odd(&h.row(0), k)?;
    let top = cover_path_odd(&h.row(height), k)?;
    let last_centre = (m * width + k, m * height + k);
    let f = h.map();
    let domain = subdivided_image(f.domain(), m)?;
    let codomain = subdivided_image(f.codomain(), m)?;
    let cover = DigitalMap::from_fn(&domain, &codomain, |z| {
        let (s, t) = (z.coord(0), z.coord(1));
        if s < k {
            left.at(t).clone()
        } else if t < k {
            bottom.at(s).clone()
        } else if s > last_centre.0 {
            right.at(t).clone()
        } else if t > last_centre.1 {
            top.at(s).clone()
        } else {
            interior_value(f, k, z)
        }
    })?;
    checked(f, cover, m, m)
}

/// The value of the spoke-and-square construction at a point lying between centres,
/// computed for the one square that contains it.
fn interior_value(f: &DigitalMap, k: i64, z: &LatticePoint) -> LatticePoint {
    let m = 2 * k + 1;
    let x = project_point(z, m);
    let c = centre(&x, k);
    let (d0, d1) = (z.coord(0) - c.coord(0), z.coord(1) - c.coord(1));
    let i = if sign_step(d0) > 0 {
        x.coord(0)
    } else {
        x.coord(0) - 1
    };
    let j = if sign_step(d1) > 0 {
        x.coord(1)
    } else {
        x.coord(1) - 1
    };
    fill_square(f, k, i, j)
        .into_iter()
        .find(|(p, _)| p == z)
        .map(|(_, v)| v)
        .expect("point lies in its square")
}
