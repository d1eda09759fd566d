#![allow(dead_code)]

use std::collections::BTreeSet;

use digicover::cover1d::DigitalPath;
use digicover::{DigitalImage, DigitalMap, LatticePoint};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn pt<const N: usize>(c: [i64; N]) -> LatticePoint {
    LatticePoint::from(c)
}

pub fn image2(points: &[[i64; 2]]) -> DigitalImage {
    DigitalImage::new(2, points.iter().map(|&p| pt(p))).unwrap()
}

pub fn swap() -> DigitalMap {
    let i1 = DigitalImage::interval(1).unwrap();
    DigitalMap::from_fn(&i1, &i1, |p| pt([1 - p.coord(0)])).unwrap()
}

/// `X = {(0,0),(1,0),(0,1)} -> Y = {(0,0),(1,1)}`, the origin fixed and the rest sent to (1,1).
pub fn wedge() -> DigitalMap {
    let x = image2(&[[0, 0], [1, 0], [0, 1]]);
    let y = image2(&[[0, 0], [1, 1]]);
    DigitalMap::from_fn(&x, &y, |p| {
        if p == &pt([0, 0]) {
            pt([0, 0])
        } else {
            pt([1, 1])
        }
    })
    .unwrap()
}

pub fn constant_interval() -> DigitalMap {
    DigitalMap::constant(
        &DigitalImage::interval(1).unwrap(),
        &DigitalImage::interval(0).unwrap(),
        &pt([0]),
    )
    .unwrap()
}

/// A random walk of `len` steps in `Z^dim`, into the image of visited points plus a few
/// random extra points.
pub fn random_path(rng: &mut StdRng, dim: usize, len: usize) -> DigitalPath {
    let mut cur = vec![0i64; dim];
    let mut values = vec![LatticePoint::new(cur.clone()).unwrap()];
    for _ in 0..len {
        for c in cur.iter_mut() {
            *c += rng.gen_range(-1..=1);
        }
        values.push(LatticePoint::new(cur.clone()).unwrap());
    }
    let mut points: BTreeSet<LatticePoint> = values.iter().cloned().collect();
    for _ in 0..rng.gen_range(0..3) {
        points
            .insert(LatticePoint::new((0..dim).map(|_| rng.gen_range(-4..=4)).collect()).unwrap());
    }
    let target = DigitalImage::new(dim, points).unwrap();
    DigitalPath::new(&target, values).unwrap()
}

/// A random integer function on the grid `[0, w] x [0, h]` changing by at most one between
/// adjacent points. Lexicographic greedy choice always succeeds, since every earlier
/// neighbour of a point is adjacent to its left neighbour.
fn lipschitz_grid(rng: &mut StdRng, w: i64, h: i64, spread: i64) -> Vec<Vec<i64>> {
    let mut v = vec![vec![0i64; (h + 1) as usize]; (w + 1) as usize];
    for a in 0..=w {
        for b in 0..=h {
            let mut lo = i64::MIN;
            let mut hi = i64::MAX;
            for (da, db) in [(-1, -1), (-1, 0), (-1, 1), (0, -1)] {
                let (pa, pb) = (a + da, b + db);
                if pa >= 0 && pb >= 0 && pb <= h {
                    let u = v[pa as usize][pb as usize];
                    lo = lo.max(u - 1);
                    hi = hi.min(u + 1);
                }
            }
            v[a as usize][b as usize] = if lo == i64::MIN {
                rng.gen_range(0..=spread)
            } else {
                rng.gen_range(lo..=hi)
            };
        }
    }
    v
}

/// A random continuous map from a random subset (at most `max_points`) of a small grid into
/// `Z^n`, with codomain its image plus a few extra points.
pub fn random_map_2d(rng: &mut StdRng, max_points: usize, n: usize) -> DigitalMap {
    let (w, h) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
    let mut grid: Vec<[i64; 2]> = (0..=w).flat_map(|a| (0..=h).map(move |b| [a, b])).collect();
    grid.shuffle(rng);
    let take = rng.gen_range(1..=max_points.min(grid.len()));
    let domain = image2(&grid[..take]);
    let coords: Vec<Vec<Vec<i64>>> = (0..n).map(|_| lipschitz_grid(rng, w, h, 2)).collect();
    let value = |p: &LatticePoint| {
        LatticePoint::new(
            coords
                .iter()
                .map(|g| g[p.coord(0) as usize][p.coord(1) as usize])
                .collect(),
        )
        .unwrap()
    };
    let mut targets: BTreeSet<LatticePoint> = domain.points().iter().map(value).collect();
    for _ in 0..rng.gen_range(0..2) {
        targets.insert(LatticePoint::new((0..n).map(|_| rng.gen_range(-3..=5)).collect()).unwrap());
    }
    let codomain = DigitalImage::new(n, targets).unwrap();
    DigitalMap::from_fn(&domain, &codomain, value).unwrap()
}

/// A random continuous `H: I_M x I_N -> Z^n`, with codomain its image.
pub fn random_rectangle_map(rng: &mut StdRng, n: usize) -> DigitalMap {
    let (w, h) = (rng.gen_range(0..=4), rng.gen_range(1..=3));
    let coords: Vec<Vec<Vec<i64>>> = (0..n).map(|_| lipschitz_grid(rng, w, h, 2)).collect();
    let domain = DigitalImage::rectangle(w, h).unwrap();
    let value = |p: &LatticePoint| {
        LatticePoint::new(
            coords
                .iter()
                .map(|g| g[p.coord(0) as usize][p.coord(1) as usize])
                .collect(),
        )
        .unwrap()
    };
    let codomain = DigitalImage::new(
        n,
        domain.points().iter().map(value).collect::<BTreeSet<_>>(),
    )
    .unwrap();
    DigitalMap::from_fn(&domain, &codomain, value).unwrap()
}

/// All nonempty subsets of `[0, 2]^2` with at most `max` points, translated so that both
/// coordinates have minimum zero, without repeats. Points at distance two are already
/// non-adjacent, so larger windows add no new adjacency patterns up to translation.
pub fn small_images(max: usize) -> Vec<DigitalImage> {
    let window: Vec<[i64; 2]> = (0..3).flat_map(|a| (0..3).map(move |b| [a, b])).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1 << window.len()) {
        if mask.count_ones() as usize > max {
            continue;
        }
        let pts: Vec<[i64; 2]> = (0..window.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| window[i])
            .collect();
        let (ma, mb) = (
            pts.iter().map(|p| p[0]).min().unwrap(),
            pts.iter().map(|p| p[1]).min().unwrap(),
        );
        let mut norm: Vec<[i64; 2]> = pts.iter().map(|p| [p[0] - ma, p[1] - mb]).collect();
        norm.sort();
        if seen.insert(norm.clone()) {
            out.push(image2(&norm));
        }
    }
    out
}

/// Every continuous map `X -> Y`.
pub fn all_continuous_maps(x: &DigitalImage, y: &DigitalImage) -> Vec<DigitalMap> {
    let n = x.len();
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let f =
            DigitalMap::from_fn(x, y, |p| y.point(digits[x.index_of(p).unwrap()]).clone()).unwrap();
        if f.is_continuous() {
            out.push(f);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < y.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// A random continuous `H: I_M x I_N -> Z^n`. With `rel`, both end columns are constant;
/// with `based` they are also equal, so every stage is a loop at one point.
///
/// Cell `(s, t)` is kept within `M - s` of the right column's constant in every coordinate,
/// which keeps the greedy choice feasible up to the constant last column.
pub fn random_cylinder(
    rng: &mut StdRng,
    n: usize,
    rel: bool,
    based: bool,
) -> (i64, i64, DigitalMap) {
    let (w, h) = (rng.gen_range(1..=4), rng.gen_range(1..=3));
    let coords: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|_| {
            let left = rng.gen_range(0..=2);
            let right = if based {
                left
            } else {
                left + rng.gen_range(-w.min(2)..=w.min(2))
            };
            let mut v = vec![vec![0i64; (h + 1) as usize]; (w + 1) as usize];
            for a in 0..=w {
                for b in 0..=h {
                    let mut lo = i64::MIN / 4;
                    let mut hi = i64::MAX / 4;
                    for (da, db) in [(-1, -1), (-1, 0), (-1, 1), (0, -1)] {
                        let (pa, pb) = (a + da, b + db);
                        if pa >= 0 && pb >= 0 && pb <= h {
                            let u = v[pa as usize][pb as usize];
                            lo = lo.max(u - 1);
                            hi = hi.min(u + 1);
                        }
                    }
                    if rel {
                        if a == 0 {
                            lo = left;
                            hi = left;
                        }
                        lo = lo.max(right - (w - a));
                        hi = hi.min(right + (w - a));
                    } else if a == 0 && b == 0 {
                        lo = 0;
                        hi = 2;
                    }
                    v[a as usize][b as usize] = rng.gen_range(lo..=hi);
                }
            }
            v
        })
        .collect();
    let domain = DigitalImage::rectangle(w, h).unwrap();
    let value = |p: &LatticePoint| {
        LatticePoint::new(
            coords
                .iter()
                .map(|g| g[p.coord(0) as usize][p.coord(1) as usize])
                .collect(),
        )
        .unwrap()
    };
    let codomain = DigitalImage::new(
        n,
        domain.points().iter().map(value).collect::<BTreeSet<_>>(),
    )
    .unwrap();
    (
        w,
        h,
        DigitalMap::from_fn(&domain, &codomain, value).unwrap(),
    )
}
