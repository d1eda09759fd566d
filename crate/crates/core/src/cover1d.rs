//! Covers of paths and loops.
//!
//! The standard cover of a path `α: I_N -> Y` at an odd factor `2k+1` sends the centre
//! of each block `S(i, 2k+1)` to the centre of `S(α(i), 2k+1)` and joins consecutive
//! centres by repeatedly adding the displacement `α(i+1) - α(i)`.

use crate::digital::{DigitalImage, DigitalMap, LatticePoint};
use crate::error::{Error, Result};
use crate::subdivision::{
    centre, cover_via_partial_projection, partial_projection_point, project_point, subdivided_image,
};

/// A continuous map `I_N -> Y`, stored as its list of values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DigitalPath {
    target: DigitalImage,
    values: Vec<LatticePoint>,
}

impl DigitalPath {
    pub fn new(target: &DigitalImage, values: Vec<LatticePoint>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument(
                "a path needs at least one value".into(),
            ));
        }
        if let Some(p) = values.iter().find(|p| !target.contains(p)) {
            return Err(Error::NotInImage(p.clone()));
        }
        if let Some(i) = (1..values.len()).find(|&i| !values[i - 1].touches(&values[i])) {
            return Err(Error::Discontinuous(
                LatticePoint::from([i as i64 - 1]),
                LatticePoint::from([i as i64]),
            ));
        }
        Ok(DigitalPath {
            target: target.clone(),
            values,
        })
    }

    /// Reads a path off a map whose domain is an interval `I_N`.
    pub fn from_map(map: &DigitalMap) -> Result<Self> {
        let n = map.domain().len() as i64 - 1;
        if map.domain() != &DigitalImage::interval(n)? {
            return Err(Error::ImageMismatch(
                "path domain must be an interval I_N".into(),
            ));
        }
        Self::new(
            map.codomain(),
            map.pairs().map(|(_, v)| v.clone()).collect(),
        )
    }

    pub fn to_map(&self) -> DigitalMap {
        let domain = DigitalImage::interval(self.length()).expect("nonnegative length");
        DigitalMap::from_pairs(
            &domain,
            &self.target,
            domain
                .points()
                .iter()
                .cloned()
                .zip(self.values.iter().cloned()),
        )
        .expect("path values lie in the target")
    }

    /// `N`, so the domain is `I_N`.
    pub fn length(&self) -> i64 {
        self.values.len() as i64 - 1
    }

    pub fn target(&self) -> &DigitalImage {
        &self.target
    }

    pub fn values(&self) -> &[LatticePoint] {
        &self.values
    }

    pub fn at(&self, i: i64) -> &LatticePoint {
        &self.values[i as usize]
    }

    pub fn is_loop(&self) -> bool {
        self.values.first() == self.values.last()
    }
}

fn check_half(k: i64) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!(
            "odd covers need k >= 1 (factor 2k+1), got {k}"
        )));
    }
    Ok(())
}

fn step(from: &LatticePoint, times: i64, a: &LatticePoint, b: &LatticePoint) -> LatticePoint {
    from.map_coords(|i, c| c + times * (b.coord(i) - a.coord(i)))
}

/// The standard cover `α̂: S(I_N, 2k+1) -> S(Y, 2k+1)` of a path.
pub fn cover_path_odd(alpha: &DigitalPath, k: i64) -> Result<DigitalPath> {
    check_half(k)?;
    let m = 2 * k + 1;
    let n = alpha.length();
    let target = subdivided_image(alpha.target(), m)?;
    let last = n * m + 2 * k;
    let values = (0..=last)
        .map(|j| {
            if j < k {
                centre(alpha.at(0), k)
            } else if j >= n * m + k {
                centre(alpha.at(n), k)
            } else {
                let (q, r) = ((j - k) / m, (j - k) % m);
                step(&centre(alpha.at(q), k), r, alpha.at(q), alpha.at(q + 1))
            }
        })
        .collect();
    Ok(DigitalPath { target, values })
}

/// A cover `F: S(I_N, k+1) -> S(Y, k)` of a path for any `k >= 2`, obtained from the
/// standard cover and a partial projection.
///
/// For odd `k` this is deliberately the composite through `ρ^c_{k+1}`; use
/// [`cover_path_odd`] for the direct cover at an odd factor.
pub fn cover_path_any(alpha: &DigitalPath, k: i64) -> Result<DigitalMap> {
    cover_via_partial_projection(&alpha.to_map(), k, |h| {
        Ok(cover_path_odd(alpha, h)?.to_map())
    })
}

/// A loop `Γ: S(I_N, k') -> S(Y, k)` covering the loop `γ`, with `k'` the odd one of
/// `k, k+1`. With `base` given, both ends of `Γ` are moved to `base`, which must lie in
/// the block over `γ(0)`.
pub fn cover_loop(gamma: &DigitalPath, k: i64, base: Option<&LatticePoint>) -> Result<DigitalPath> {
    if !gamma.is_loop() {
        return Err(Error::InvalidArgument(
            "path does not start and end at the same point".into(),
        ));
    }
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "loop covers need k >= 2, got {k}"
        )));
    }
    let (half, squeeze) = if k % 2 == 1 {
        ((k - 1) / 2, false)
    } else {
        (k / 2, true)
    };
    let lift = cover_path_odd(gamma, half)?;
    let mut values: Vec<LatticePoint> = if squeeze {
        lift.values
            .iter()
            .map(|y| partial_projection_point(y, k + 1))
            .collect()
    } else {
        lift.values
    };
    if let Some(base) = base {
        let y0 = gamma.at(0);
        if base.dim() != y0.dim() || &project_point(base, k) != y0 {
            return Err(Error::InvalidArgument(format!(
                "base point {base} is not in the block over {y0}"
            )));
        }
        // The first and last `half` values are a constant run at the image of the centre.
        let anchor = values[half as usize].clone();
        let run = loose_end(base, &anchor, half);
        let last = values.len() - 1;
        for (j, p) in run.into_iter().enumerate() {
            values[j] = p.clone();
            values[last - j] = p;
        }
    }
    Ok(DigitalPath {
        target: subdivided_image(gamma.target(), k)?,
        values,
    })
}

/// `steps + 1` points from `from` to `to`: hold at `from`, then move every coordinate one
/// unit toward `to` per step. The Chebyshev distance must not exceed `steps`.
fn loose_end(from: &LatticePoint, to: &LatticePoint, steps: i64) -> Vec<LatticePoint> {
    let distance = from.chebyshev(to);
    debug_assert!(distance <= steps);
    let hold = steps - distance;
    (0..=steps)
        .map(|j| {
            let moved = (j - hold).max(0);
            from.map_coords(|i, c| {
                let delta = to.coord(i) - c;
                c + delta.signum() * delta.abs().min(moved)
            })
        })
        .collect()
}
