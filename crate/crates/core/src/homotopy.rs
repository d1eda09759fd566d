//! Homotopies as continuous maps `X x I_N -> Y`, and covers of path homotopies.

use crate::cover2d::{cover_rectangle, RectangleMap};
use crate::digital::{DigitalImage, DigitalMap, LatticePoint};
use crate::error::{Error, Result};

/// A homotopy `H: X x I_N -> Y` with `N >= 1` stages, stored as a full table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    stages: i64,
    space: DigitalImage,
    underlying: DigitalMap,
}

impl Homotopy {
    /// Wraps a continuous map whose domain is `X x I_N`, the last coordinate being time.
    pub fn new(space: &DigitalImage, stages: i64, underlying: DigitalMap) -> Result<Self> {
        if stages < 1 {
            return Err(Error::InvalidArgument(format!(
                "a homotopy needs at least one stage, got {stages}"
            )));
        }
        let cylinder = space.product(&DigitalImage::interval(stages)?);
        if underlying.domain() != &cylinder {
            return Err(Error::ImageMismatch(
                "homotopy domain is not X x I_N".into(),
            ));
        }
        underlying.ensure_continuous()?;
        Ok(Homotopy {
            stages,
            space: space.clone(),
            underlying,
        })
    }

    /// Builds `H` from its stages `H(-, 0), ..., H(-, N)`, which must share domain and codomain.
    pub fn from_slices(slices: &[DigitalMap]) -> Result<Self> {
        if slices.len() < 2 {
            return Err(Error::InvalidArgument(
                "a homotopy needs at least two slices".into(),
            ));
        }
        let first = &slices[0];
        let stages = slices.len() as i64 - 1;
        for g in slices {
            check_shape(first, g)?;
        }
        let space = first.domain();
        let underlying = DigitalMap::from_fn(
            &space.product(&DigitalImage::interval(stages)?),
            first.codomain(),
            |p| {
                let (x, t) = split(p);
                slices[t as usize].apply(&x).expect("point of X").clone()
            },
        )?;
        Self::new(space, stages, underlying)
    }

    /// The constant homotopy `H(x, t) = f(x)`.
    pub fn constant(f: &DigitalMap, stages: i64) -> Result<Self> {
        Self::from_slices(&vec![f.clone(); (stages.max(1) + 1) as usize])
    }

    pub fn stages(&self) -> i64 {
        self.stages
    }

    pub fn space(&self) -> &DigitalImage {
        &self.space
    }

    pub fn target(&self) -> &DigitalImage {
        self.underlying.codomain()
    }

    pub fn underlying(&self) -> &DigitalMap {
        &self.underlying
    }

    pub fn at(&self, x: &LatticePoint, t: i64) -> Result<&LatticePoint> {
        let p = x.concat(&LatticePoint::from([t]));
        self.underlying.apply(&p).ok_or(Error::NotInImage(p))
    }

    /// The stage `H(-, t)`.
    pub fn slice(&self, t: i64) -> Result<DigitalMap> {
        if !(0..=self.stages).contains(&t) {
            return Err(Error::InvalidArgument(format!(
                "stage {t} is outside 0..={}",
                self.stages
            )));
        }
        DigitalMap::from_fn(&self.space, self.target(), |x| {
            self.at(x, t).expect("stage point").clone()
        })
    }

    /// `H(x, N - t)`.
    pub fn reversed(&self) -> Self {
        let n = self.stages;
        let underlying = DigitalMap::from_fn(self.underlying.domain(), self.target(), |p| {
            let (x, t) = split(p);
            self.at(&x, n - t).expect("stage point").clone()
        })
        .expect("same codomain");
        Homotopy {
            stages: n,
            space: self.space.clone(),
            underlying,
        }
    }

    /// Runs `self` and then `other`, with `N + N'` stages. The last stage of `self` must equal
    /// the first stage of `other`.
    pub fn concat(&self, other: &Homotopy) -> Result<Self> {
        if self.space != other.space || self.target() != other.target() {
            return Err(Error::ImageMismatch(
                "homotopies have different shapes".into(),
            ));
        }
        if self.slice(self.stages)? != other.slice(0)? {
            return Err(Error::InvalidArgument(
                "end stage does not match the next start stage".into(),
            ));
        }
        let mut slices: Vec<DigitalMap> = (0..=self.stages)
            .map(|t| self.slice(t))
            .collect::<Result<_>>()?;
        for t in 1..=other.stages {
            slices.push(other.slice(t)?);
        }
        Self::from_slices(&slices)
    }

    fn is_cylinder_on_interval(&self) -> Result<i64> {
        let (lo, hi) = self.space.bounds();
        if self.space.dim() != 1 || lo[0] != 0 || self.space != DigitalImage::interval(hi[0])? {
            return Err(Error::ImageMismatch(
                "homotopy is not defined on a path cylinder I_M x I_N".into(),
            ));
        }
        Ok(hi[0])
    }

    /// Whether both end columns `H(0, -)` and `H(M, -)` are constant.
    pub fn is_rel_endpoints(&self) -> Result<bool> {
        let m = self.is_cylinder_on_interval()?;
        let constant_column = |s: i64| -> bool {
            let first = self.at(&LatticePoint::from([s]), 0).expect("column point");
            (1..=self.stages)
                .all(|t| self.at(&LatticePoint::from([s]), t).expect("column point") == first)
        };
        Ok(constant_column(0) && constant_column(m))
    }

    /// Whether every stage is a loop at the same point, which is then the base point.
    pub fn is_based_loop_homotopy(&self) -> Result<bool> {
        let m = self.is_cylinder_on_interval()?;
        let base = self.at(&LatticePoint::from([0]), 0)?;
        Ok((0..=self.stages).all(|t| {
            self.at(&LatticePoint::from([0]), t).expect("column point") == base
                && self.at(&LatticePoint::from([m]), t).expect("column point") == base
        }))
    }
}

fn split(p: &LatticePoint) -> (LatticePoint, i64) {
    let d = p.dim();
    (p.slice(0..d - 1), p.coord(d - 1))
}

fn check_shape(f: &DigitalMap, g: &DigitalMap) -> Result<()> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(Error::ImageMismatch(
            "maps have different domains or codomains".into(),
        ));
    }
    Ok(())
}

/// Whether `H(-, 0) = f` and `H(-, N) = g`.
pub fn is_homotopy_between(h: &Homotopy, f: &DigitalMap, g: &DigitalMap) -> Result<bool> {
    check_shape(f, g)?;
    if f.domain() != h.space() || f.codomain() != h.target() {
        return Err(Error::ImageMismatch(
            "maps and homotopy have different shapes".into(),
        ));
    }
    Ok(h.slice(0)? == *f && h.slice(h.stages())? == *g)
}

/// The cover `Ĥ` of a path homotopy `H: I_M x I_N -> Y`, a homotopy with `(2k+1)N + 2k` stages
/// from `α̂` to `β̂` between maps `S(I_M, 2k+1) -> S(Y, 2k+1)`.
pub fn cover_homotopy(h: &Homotopy, k: i64) -> Result<Homotopy> {
    h.is_cylinder_on_interval()?;
    let rect = RectangleMap::new(h.underlying().clone())?;
    let cover = cover_rectangle(&rect, k)?;
    let m = 2 * k + 1;
    let width = m * rect.width() + 2 * k;
    let stages = m * rect.height() + 2 * k;
    Homotopy::new(&DigitalImage::interval(width)?, stages, cover)
}
