//! Classification of the origin, removal of apparent singularities and
//! truncated power-series solutions at apparent singularities.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Exponent, MultiPoly, Q};
use crate::error::{check_nvars, Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideals::{exp_ideal, intersect_all, point_ideal, LeftIdeal};
use crate::indicial::{candidate_exponents, CandidateSet};
use crate::linalg::{determinant, nullspace, rank};
use crate::series::{solutions_at_ordinary, TruncatedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Ordinary,
    Apparent,
    NotApparent,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Ordinary => "ordinary",
            Verdict::Apparent => "apparent",
            Verdict::NotApparent => "not apparent",
        })
    }
}

/// A left multiple with an ordinary origin and how it was found.
#[derive(Clone, Debug)]
pub struct Desingularization {
    pub basis: GroebnerBasis,
    /// the subset B of the candidate set that succeeded
    pub subset: Vec<Exponent>,
    pub m: u32,
    pub candidates: CandidateSet,
    /// number of subsets tried, including the successful one
    pub trials: usize,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub verdict: Verdict,
    pub witness: Option<Desingularization>,
    /// absent when the origin is ordinary
    pub candidates: Option<CandidateSet>,
    pub rank: usize,
}

/// Outcome of the randomized method; `result` is `None` on failure.
#[derive(Clone, Debug)]
pub struct RandomDesingularization {
    pub result: Option<Desingularization>,
    pub candidates: CandidateSet,
    pub seed: u64,
    /// exponential points used by each trial, in trial order
    pub points: Vec<Vec<Vec<Q>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WronskianMatrix {
    pub rows: Vec<Exponent>,
    pub entries: Vec<Vec<Q>>,
}

impl WronskianMatrix {
    pub fn determinant(&self) -> Q {
        determinant(&self.entries)
    }
}

/// Truncated solutions at an apparent singularity and the data behind them.
#[derive(Clone, Debug)]
pub struct ApparentSeries {
    /// `p_1..p_d`, the degree-m truncations
    pub polys: Vec<MultiPoly>,
    pub witness: Desingularization,
    /// the final `s` of the loop; the matrix has rows for degrees `<= s`
    pub s: u32,
    pub matrix: Vec<Vec<Q>>,
    pub kernel: Vec<Vec<Q>>,
    /// `h_1..h_l`, truncated at `s + r`
    pub h: Vec<TruncatedSeries>,
}

/// Size-d subsets of the candidates, ordered by largest total degree and then
/// lexicographically.
pub fn candidate_subsets(s: &CandidateSet, d: usize) -> Vec<Vec<Exponent>> {
    let mut items = s.exponents.clone();
    items.sort();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(d);
    combinations(&items, d, 0, &mut current, &mut out);
    out.sort_by(|a, b| max_degree(a).cmp(&max_degree(b)).then_with(|| a.cmp(b)));
    out
}

fn combinations(
    items: &[Exponent],
    k: usize,
    start: usize,
    current: &mut Vec<Exponent>,
    out: &mut Vec<Vec<Exponent>>,
) {
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    for i in start..items.len() {
        if items.len() - i < k - current.len() {
            break;
        }
        current.push(items[i].clone());
        combinations(items, k, i + 1, current, out);
        current.pop();
    }
}

fn max_degree(b: &[Exponent]) -> u32 {
    b.iter().map(Exponent::degree).max().unwrap_or(0)
}

/// `G` intersected with the point ideals of `N^n_m \ B`.
fn point_multiple(g: &GroebnerBasis, b: &[Exponent]) -> Result<(GroebnerBasis, u32)> {
    let m = max_degree(b);
    let mut ideals = vec![LeftIdeal::from_basis(g.clone())];
    for v in Exponent::up_to_degree(g.nvars(), m) {
        if !b.contains(&v) {
            ideals.push(point_ideal(&v)?);
        }
    }
    Ok((intersect_all(&ideals)?.into_basis(), m))
}

/// Tries the subsets in order and returns the first ordinary left multiple.
fn search(g: &GroebnerBasis, candidates: &CandidateSet, d: usize) -> Result<Option<Desingularization>> {
    for (k, b) in candidate_subsets(candidates, d).into_iter().enumerate() {
        let (basis, m) = point_multiple(g, &b)?;
        if basis.is_ordinary_at_origin() {
            return Ok(Some(Desingularization {
                basis,
                subset: b,
                m,
                candidates: candidates.clone(),
                trials: k + 1,
            }));
        }
    }
    Ok(None)
}

/// A left multiple of `G` whose origin is ordinary, for an apparent
/// singularity at the origin.
pub fn desingularize(g: &GroebnerBasis) -> Result<Desingularization> {
    let d = g.rank()?;
    let candidates = candidate_exponents(g)?;
    search(g, &candidates, d)?.ok_or(Error::NotApparent)
}

/// Decides whether the origin is ordinary, an apparent singularity, or a
/// singularity that is not apparent.
pub fn classify_origin(g: &GroebnerBasis) -> Result<Classification> {
    let d = g.rank()?;
    if g.is_ordinary_at_origin() {
        return Ok(Classification {
            verdict: Verdict::Ordinary,
            witness: None,
            candidates: None,
            rank: d,
        });
    }
    let candidates = candidate_exponents(g)?;
    let witness = if candidates.len() < d {
        None
    } else {
        search(g, &candidates, d)?
    };
    Ok(Classification {
        verdict: if witness.is_some() {
            Verdict::Apparent
        } else {
            Verdict::NotApparent
        },
        witness,
        candidates: Some(candidates),
        rank: d,
    })
}

/// Randomized desingularization by intersecting with exponential ideals.
///
/// Each trial needs `l - d` points; the supplied points are used first and
/// the rest are drawn from a generator seeded with `seed`, with integer
/// coordinates in `1..=100`.
pub fn desingularize_random(
    g: &GroebnerBasis,
    points: Option<&[Vec<Q>]>,
    seed: u64,
) -> Result<RandomDesingularization> {
    let n = g.nvars();
    let supplied = points.unwrap_or(&[]);
    for p in supplied {
        if p.len() != n {
            return Err(Error::Structural(format!(
                "random point {p:?} has {} coordinates, expected {n}",
                p.len()
            )));
        }
    }
    let d = g.rank()?;
    let candidates = candidate_exponents(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = Vec::new();
    let mut result = None;
    for (k, b) in candidate_subsets(&candidates, d).into_iter().enumerate() {
        let m = max_degree(&b);
        let l = Exponent::up_to_degree(n, m).len();
        let mut trial: Vec<Vec<Q>> = supplied.iter().take(l - d).cloned().collect();
        while trial.len() < l - d {
            trial.push((0..n).map(|_| Q::from_integer(rng.gen_range(1..=100).into())).collect());
        }
        let mut ideals = vec![LeftIdeal::from_basis(g.clone())];
        for c in &trial {
            ideals.push(exp_ideal(c)?);
        }
        let basis = intersect_all(&ideals)?.into_basis();
        used.push(trial);
        if basis.is_ordinary_at_origin() {
            result = Some(Desingularization {
                basis,
                subset: b,
                m,
                candidates: candidates.clone(),
                trials: k + 1,
            });
            break;
        }
    }
    Ok(RandomDesingularization {
        result,
        candidates,
        seed,
        points: used,
    })
}

/// Entry `(i, j)` is `c_{u_i}` of the j-th series.
pub fn wronskian_matrix(series: &[TruncatedSeries], rows: &[Exponent]) -> Result<WronskianMatrix> {
    if series.len() != rows.len() {
        return Err(Error::Structural(format!(
            "{} series but {} rows; the matrix must be square",
            series.len(),
            rows.len()
        )));
    }
    let need = max_degree(rows);
    let mut entries = vec![Vec::with_capacity(series.len()); rows.len()];
    for f in series {
        if let Some(u) = rows.first() {
            check_nvars(u.len(), f.nvars())?;
        }
        if f.trunc_degree() < need {
            return Err(Error::InsufficientTruncation {
                have: f.trunc_degree(),
                need,
            });
        }
        for (row, u) in entries.iter_mut().zip(rows) {
            row.push(f.scaled_coeff(u));
        }
    }
    Ok(WronskianMatrix {
        rows: rows.to_vec(),
        entries,
    })
}

/// Loop bound for the truncation search: `m + r + l + 16`.
pub fn convergence_cap(m: u32, r: u32, l: usize) -> u32 {
    m + r + l as u32 + 16
}

/// Degree-m truncations of a basis of power-series solutions at an apparent
/// singularity at the origin.
pub fn truncated_solutions_apparent(g: &GroebnerBasis, m: u32) -> Result<ApparentSeries> {
    truncated_solutions_apparent_with_cap(g, m, None)
}

/// As [`truncated_solutions_apparent`], giving up once `s` exceeds `cap`
/// (default [`convergence_cap`]).
pub fn truncated_solutions_apparent_with_cap(g: &GroebnerBasis, m: u32, cap: Option<u32>) -> Result<ApparentSeries> {
    let witness = desingularize(g)?;
    let big = &witness.basis;
    let l = big.rank()?;
    let d = g.rank()?;
    let r = g.elements().iter().map(|e| e.order()).max().unwrap_or(0);
    let cap = cap.unwrap_or_else(|| convergence_cap(m, r, l));
    let mut s = m;
    loop {
        if s > cap {
            return Err(Error::ConvergenceCap { cap });
        }
        let h = solutions_at_ordinary(big, s + r)?.basis;
        let matrix = truncation_matrix(g, &h, s)?;
        if rank(&matrix) == l - d {
            let kernel = nullspace(&matrix, l);
            let polys = kernel
                .iter()
                .map(|c| {
                    let mut acc = MultiPoly::zero(g.nvars());
                    for (ci, hi) in c.iter().zip(&h) {
                        if !ci.is_zero() {
                            acc = &acc + &hi.truncate(m).to_poly().scale(ci);
                        }
                    }
                    acc
                })
                .collect();
            return Ok(ApparentSeries {
                polys,
                witness,
                s,
                matrix,
                kernel,
                h,
            });
        }
        s += 1;
    }
}

/// Rows: the coefficients of degree `<= s` of `G_t(h_i)`, one column per `h_i`.
fn truncation_matrix(g: &GroebnerBasis, h: &[TruncatedSeries], s: u32) -> Result<Vec<Vec<Q>>> {
    let monomials = Exponent::up_to_degree(g.nvars(), s);
    let mut rows = Vec::new();
    for gt in g.elements() {
        let images = h.iter().map(|hi| gt.apply(hi)).collect::<Result<Vec<_>>>()?;
        for img in &images {
            if img.trunc_degree() < s {
                return Err(Error::InsufficientTruncation {
                    have: img.trunc_degree(),
                    need: s,
                });
            }
        }
        for v in &monomials {
            rows.push(images.iter().map(|img| img.scaled_coeff(v)).collect());
        }
    }
    Ok(rows)
}
