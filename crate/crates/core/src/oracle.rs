//! Brute-force checks for covers: verification of a single candidate and exhaustive
//! backtracking enumeration of all continuous fillers of a covering square.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::digital::{DigitalImage, DigitalMap, LatticePoint};
use crate::error::{Error, Result};
use crate::subdivision::{project_point, subdivided_image};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The outcome of checking `F: S(X, k_dom) -> S(Y, k_cod)` against `f: X -> Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub k_domain: i64,
    pub k_codomain: i64,
    pub points: usize,
    pub continuous: bool,
    pub commutes: bool,
    /// Lexicographically least adjacent pair whose images are not adjacent.
    pub first_discontinuity: Option<[Vec<i64>; 2]>,
    /// Lexicographically least point where `ρ(F(z)) != f(ρ(z))`.
    pub first_noncommuting: Option<Vec<i64>>,
}

impl CoverCertificate {
    pub fn passed(&self) -> bool {
        self.continuous && self.commutes
    }

    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if let Some([p, q]) = &self.first_discontinuity {
            parts.push(format!(
                "discontinuous at {} ~ {}",
                LatticePoint::from_vec(p.clone()),
                LatticePoint::from_vec(q.clone())
            ));
        }
        if let Some(z) = &self.first_noncommuting {
            parts.push(format!(
                "square fails to commute at {}",
                LatticePoint::from_vec(z.clone())
            ));
        }
        if parts.is_empty() {
            "pass".into()
        } else {
            parts.join("; ")
        }
    }
}

fn check_factor(k: i64) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!(
            "subdivision factor must be at least 1, got {k}"
        )));
    }
    Ok(())
}

/// Checks that `cover` is continuous and that `ρ_{k_cod} ∘ cover = f ∘ ρ_{k_dom}`.
pub fn verify_cover(
    f: &DigitalMap,
    cover: &DigitalMap,
    k_dom: i64,
    k_cod: i64,
) -> Result<CoverCertificate> {
    check_factor(k_dom)?;
    check_factor(k_cod)?;
    if cover.domain() != &subdivided_image(f.domain(), k_dom)? {
        return Err(Error::ImageMismatch(format!(
            "cover domain is not S(X, {k_dom})"
        )));
    }
    if cover.codomain() != &subdivided_image(f.codomain(), k_cod)? {
        return Err(Error::ImageMismatch(format!(
            "cover codomain is not S(Y, {k_cod})"
        )));
    }
    let first_discontinuity = cover
        .first_discontinuity()
        .map(|(p, q)| [p.into_coords(), q.into_coords()]);
    let first_noncommuting = cover
        .pairs()
        .find(|(z, v)| f.apply(&project_point(z, k_dom)) != Some(&project_point(v, k_cod)))
        .map(|(z, _)| z.coords().to_vec());
    Ok(CoverCertificate {
        k_domain: k_dom,
        k_codomain: k_cod,
        points: cover.domain().len(),
        continuous: first_discontinuity.is_none(),
        commutes: first_noncommuting.is_none(),
        first_discontinuity,
        first_noncommuting,
    })
}

/// A covering square to be filled: continuous maps `S(X, k_dom) -> S(Y, k_cod)`, required to
/// commute with the projections when `fibrewise` is set.
#[derive(Clone, Debug)]
pub struct FillerQuery {
    pub f: DigitalMap,
    pub k_dom: i64,
    pub k_cod: i64,
    pub fibrewise: bool,
}

impl FillerQuery {
    pub fn new(f: &DigitalMap, k_dom: i64, k_cod: i64) -> Self {
        FillerQuery {
            f: f.clone(),
            k_dom,
            k_cod,
            fibrewise: true,
        }
    }
}

/// Fillers found by [`enumerate_fillers`]. `count` is exact; `fillers` holds the first
/// `limit` of them in lexicographic order of their value tables.
#[derive(Clone, Debug)]
pub struct FillerSet {
    pub fillers: Vec<DigitalMap>,
    pub count: u64,
    pub evaluations: u64,
    /// Whether the probe passed to [`enumerate_fillers_probing`] was among the fillers.
    pub probe_found: bool,
}

impl FillerSet {
    pub fn truncated(&self) -> bool {
        (self.fillers.len() as u64) < self.count
    }
}

/// The search tree: domain points in lexicographic order, the candidate values of each,
/// and the earlier neighbours each one must stay adjacent to.
struct Search {
    domain: DigitalImage,
    codomain: DigitalImage,
    candidates: Vec<Vec<usize>>,
    earlier: Vec<Vec<usize>>,
    /// Row-major "equal or adjacent" table on codomain indices.
    touching: Vec<bool>,
}

impl Search {
    fn new(q: &FillerQuery) -> Result<Self> {
        check_factor(q.k_dom)?;
        check_factor(q.k_cod)?;
        let domain = subdivided_image(q.f.domain(), q.k_dom)?;
        let codomain = subdivided_image(q.f.codomain(), q.k_cod)?;
        let all: Vec<usize> = (0..codomain.len()).collect();
        let candidates = domain
            .points()
            .iter()
            .map(|z| {
                if !q.fibrewise {
                    return all.clone();
                }
                let target = q.f.apply(&project_point(z, q.k_dom)).expect("domain point");
                crate::subdivision::block(target, q.k_cod)
                    .iter()
                    .map(|y| codomain.index_of(y).expect("block of a codomain point"))
                    .collect()
            })
            .collect();
        let earlier = domain
            .points()
            .iter()
            .enumerate()
            .map(|(i, z)| {
                domain
                    .neighbor_indices(z)
                    .into_iter()
                    .filter(|&j| j < i)
                    .collect()
            })
            .collect();
        let n = codomain.len();
        let mut touching = vec![false; n * n];
        for i in 0..n {
            touching[i * n + i] = true;
            for j in codomain.neighbor_indices(codomain.point(i)) {
                touching[i * n + j] = true;
            }
        }
        Ok(Search {
            domain,
            codomain,
            candidates,
            earlier,
            touching,
        })
    }

    fn fits(&self, assigned: &[usize], i: usize, c: usize) -> bool {
        let row = c * self.codomain.len();
        self.earlier[i]
            .iter()
            .all(|&j| self.touching[row + assigned[j]])
    }

    fn to_map(&self, table: &[usize]) -> DigitalMap {
        DigitalMap::from_table(self.domain.clone(), self.codomain.clone(), table.to_vec())
    }
}

/// Evaluations, filler count, stored tables and probe hit of one first-level branch.
type Branch = (u64, u64, Vec<Vec<usize>>, bool);

struct Walk<'a> {
    search: &'a Search,
    assigned: Vec<usize>,
    budget: u64,
    evaluations: u64,
    count: u64,
    limit: usize,
    found: Vec<Vec<usize>>,
    probe: Option<&'a [usize]>,
    hit: bool,
    first_only: bool,
}

impl Walk<'_> {
    fn descend(&mut self, i: usize) -> Result<()> {
        if i == self.assigned.len() {
            self.count += 1;
            if self.probe == Some(&self.assigned[..]) {
                self.hit = true;
            }
            if self.found.len() < self.limit {
                self.found.push(self.assigned.clone());
            }
            return Ok(());
        }
        for &c in &self.search.candidates[i] {
            if self.first_only && self.count > 0 {
                break;
            }
            self.evaluations += 1;
            if self.evaluations > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                });
            }
            if self.search.fits(&self.assigned, i, c) {
                self.assigned[i] = c;
                self.descend(i + 1)?;
            }
        }
        Ok(())
    }
}

/// All continuous fillers of the query, by backtracking in lexicographic order.
///
/// The choices for the first point are explored in parallel and merged in order, so the
/// result does not depend on the number of workers. Every candidate value tried counts
/// against `budget`; exceeding it is an error rather than a partial answer.
pub fn enumerate_fillers(q: &FillerQuery, limit: usize, budget: u64) -> Result<FillerSet> {
    run(q, limit, budget, None)
}

/// As [`enumerate_fillers`], also recording whether `probe` is visited. Useful when the set
/// is too large to hold but small enough to walk.
pub fn enumerate_fillers_probing(
    q: &FillerQuery,
    probe: &DigitalMap,
    limit: usize,
    budget: u64,
) -> Result<FillerSet> {
    run(q, limit, budget, Some(probe))
}

fn run(
    q: &FillerQuery,
    limit: usize,
    budget: u64,
    probe: Option<&DigitalMap>,
) -> Result<FillerSet> {
    let search = Search::new(q)?;
    let probe: Option<Vec<usize>> = match probe {
        Some(g) if g.domain() == &search.domain => Some(
            (0..search.domain.len())
                .map(|i| {
                    search
                        .codomain
                        .index_of(g.value_at(i))
                        .unwrap_or(usize::MAX)
                })
                .collect(),
        ),
        Some(_) => {
            return Err(Error::ImageMismatch(
                "probe domain differs from the query".into(),
            ))
        }
        None => None,
    };
    let n = search.domain.len();
    let first = search.candidates[0].clone();
    let branches: Vec<Result<Branch>> = first
        .par_iter()
        .map(|&c| {
            let mut walk = Walk {
                search: &search,
                assigned: vec![0; n],
                budget,
                evaluations: 1,
                count: 0,
                limit,
                found: Vec::new(),
                probe: probe.as_deref(),
                hit: false,
                first_only: false,
            };
            walk.assigned[0] = c;
            walk.descend(1)?;
            Ok((walk.evaluations, walk.count, walk.found, walk.hit))
        })
        .collect();
    let mut evaluations = 0u64;
    let mut count = 0u64;
    let mut fillers = Vec::new();
    let mut probe_found = false;
    for branch in branches {
        let (e, c, found, hit) = branch?;
        probe_found |= hit;
        evaluations += e;
        if evaluations > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        count += c;
        for table in found {
            if fillers.len() < limit {
                fillers.push(search.to_map(&table));
            }
        }
    }
    Ok(FillerSet {
        fillers,
        count,
        evaluations,
        probe_found,
    })
}

/// The lexicographically first filler, if any.
pub fn find_filler(q: &FillerQuery, budget: u64) -> Result<Option<DigitalMap>> {
    let search = Search::new(q)?;
    let mut walk = Walk {
        search: &search,
        assigned: vec![0; search.domain.len()],
        budget,
        evaluations: 0,
        count: 0,
        limit: 1,
        found: Vec::new(),
        probe: None,
        hit: false,
        first_only: true,
    };
    walk.descend(0)?;
    Ok(walk.found.first().map(|t| search.to_map(t)))
}

/// Whether `candidate` is a leaf of the search tree of [`enumerate_fillers`], found by
/// following its own values down the tree instead of enumerating the siblings.
pub fn is_filler(q: &FillerQuery, candidate: &DigitalMap) -> Result<bool> {
    let search = Search::new(q)?;
    if candidate.domain() != &search.domain {
        return Err(Error::ImageMismatch(
            "candidate domain differs from the query".into(),
        ));
    }
    let mut assigned = vec![0; search.domain.len()];
    for i in 0..assigned.len() {
        let Some(c) = search.codomain.index_of(candidate.value_at(i)) else {
            return Ok(false);
        };
        if !search.candidates[i].contains(&c) || !search.fits(&assigned, i, c) {
            return Ok(false);
        }
        assigned[i] = c;
    }
    Ok(true)
}

/// Generate-and-test over every total assignment of candidate values, for cross-checking
/// the backtracking search on very small domains.
pub fn enumerate_fillers_naive(q: &FillerQuery, budget: u64) -> Result<Vec<DigitalMap>> {
    let search = Search::new(q)?;
    let n = search.domain.len();
    let total = search
        .candidates
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .filter(|&t| t <= budget)
        .ok_or(Error::BudgetExceeded { budget })?;
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        let table: Vec<usize> = (0..n).map(|i| search.candidates[i][digits[i]]).collect();
        let map = search.to_map(&table);
        if map.is_continuous() {
            out.push(map);
        }
        for i in (0..n).rev() {
            digits[i] += 1;
            if digits[i] < search.candidates[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
    Ok(out)
}
