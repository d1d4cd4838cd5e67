//! Seeded censuses: Monte Carlo proportions of curves with rational
//! 2-torsion, exact hyperelliptic censuses, and rank-bound scans.
//!
//! Sampling is split into chunks of [`CHUNK`] draws. Chunk `c` uses
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `c`, so results depend only on
//! the configuration and never on the thread count.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{make_field, BinaryField};
use crate::hassewitt::hw_matrix_on;
use crate::hyperelliptic::HyperModel;
use crate::lattice::{Classification, LatticePolygon};
use crate::laurent::LaurentPoly;
use crate::unipoly::UniPoly;
use crate::zeta;

pub const CHUNK: usize = 256;

/// Chunks evaluated per round when sampling until a number of
/// non-degenerate curves is reached.
const ROUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// `[0, i]^2`.
    Square(i64),
    Hyperelliptic(i64),
    Exceptional,
    /// `conv{(0,0), (d,0), (0,d)}`.
    Triangle(i64),
}

impl Preset {
    pub fn polygon(&self) -> Result<LatticePolygon> {
        match *self {
            Preset::Square(i) => LatticePolygon::square(i),
            Preset::Hyperelliptic(g) => LatticePolygon::hyperelliptic(g),
            Preset::Exceptional => Ok(LatticePolygon::exceptional()),
            Preset::Triangle(d) => LatticePolygon::triangle(d),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Square(i) => write!(f, "S{i}"),
            Preset::Hyperelliptic(g) => write!(f, "H{g}"),
            Preset::Exceptional => write!(f, "E"),
            Preset::Triangle(d) => write!(f, "T{d}"),
        }
    }
}

/// `S<i>` (square), `H<g>`, `E`, `T<d>` (triangle of degree `d`).
impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("e") {
            return Ok(Preset::Exceptional);
        }
        let bad = || Error::Parse(format!("unknown preset {s:?}"));
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let n: i64 = chars.as_str().parse().map_err(|_| bad())?;
        match head.to_ascii_uppercase() {
            'S' => Ok(Preset::Square(n)),
            'H' => Ok(Preset::Hyperelliptic(n)),
            'T' | 'D' => Ok(Preset::Triangle(n)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// The hyperelliptic criterion on hyperelliptic polygons, Manin otherwise.
    Auto,
    Hyperelliptic,
    Manin,
    Zeta,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(Method::Auto),
            "hyperelliptic" | "hyp" => Ok(Method::Hyperelliptic),
            "manin" => Ok(Method::Manin),
            "zeta" => Ok(Method::Zeta),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

/// What `samples` counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleTarget {
    /// Draws, degenerate or not.
    Attempted,
    /// Non-degenerate draws; sampling continues until this many are found.
    Nondegenerate,
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub label: String,
    pub polygon: LatticePolygon,
    /// Genus of the hyperelliptic preset, when the polygon is one.
    pub hyperelliptic_genus: Option<usize>,
    pub r: u32,
    pub samples: usize,
    pub seed: u64,
    pub method: Method,
    pub target: SampleTarget,
    /// Also decide with every other applicable method and count
    /// disagreements.
    pub cross_check: bool,
    /// Give up after this many draws in [`SampleTarget::Nondegenerate`] mode.
    pub max_attempts: usize,
}

impl ExperimentConfig {
    pub fn preset(preset: Preset, r: u32, samples: usize, seed: u64) -> Result<Self> {
        let polygon = preset.polygon()?;
        let hyperelliptic_genus = match preset {
            Preset::Hyperelliptic(g) if g >= 2 => Some(g as usize),
            _ => None,
        };
        Ok(ExperimentConfig {
            label: preset.to_string(),
            polygon,
            hyperelliptic_genus,
            r,
            samples,
            seed,
            method: Method::Auto,
            target: SampleTarget::Attempted,
            cross_check: false,
            max_attempts: samples.saturating_mul(1000).max(100_000),
        })
    }

    pub fn custom(label: &str, polygon: LatticePolygon, r: u32, samples: usize, seed: u64) -> Self {
        let g = polygon.genus();
        let hyperelliptic_genus = (g >= 2
            && LatticePolygon::hyperelliptic(g as i64).is_ok_and(|h| h == polygon))
        .then_some(g);
        ExperimentConfig {
            label: label.to_string(),
            polygon,
            hyperelliptic_genus,
            r,
            samples,
            seed,
            method: Method::Auto,
            target: SampleTarget::Attempted,
            cross_check: false,
            max_attempts: samples.saturating_mul(1000).max(100_000),
        }
    }

    fn resolved_method(&self) -> Result<Method> {
        let genus = self.polygon.genus();
        match self.method {
            Method::Auto => Ok(if self.hyperelliptic_genus.is_some() { Method::Hyperelliptic } else { Method::Manin }),
            Method::Hyperelliptic if self.hyperelliptic_genus.is_none() => {
                Err(Error::Config("the hyperelliptic method needs a hyperelliptic polygon".into()))
            }
            Method::Zeta if !zeta_applicable(genus, self.r) => {
                Err(Error::Config(format!("genus {genus} over GF(2^{}) exceeds the point-counting caps", self.r)))
            }
            m => Ok(m),
        }
    }
}

fn zeta_applicable(genus: usize, r: u32) -> bool {
    genus <= zeta::MAX_GENUS && r as usize * genus <= zeta::DEFAULT_CAP_BITS as usize
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProportionReport {
    pub label: String,
    pub q: u64,
    pub attempted: usize,
    pub nondegenerate: usize,
    pub with_2torsion: usize,
    /// `with_2torsion / nondegenerate`; absent when nothing was
    /// non-degenerate.
    #[serde(serialize_with = "ser_opt_ratio")]
    pub proportion: Option<BigRational>,
    pub stderr: Option<f64>,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub reference: Option<BigRational>,
    /// Samples satisfying the lattice sufficient condition.
    pub in_s_delta: usize,
    /// Of those, samples where no 2-torsion was found. Always zero unless
    /// something is wrong.
    pub s_delta_without_torsion: usize,
    /// Samples where two decision methods disagreed (cross-check only).
    pub disagreements: usize,
}

fn ser_opt_ratio<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

impl ProportionReport {
    pub fn proportion_f64(&self) -> Option<f64> {
        self.proportion.as_ref().and_then(|p| p.to_f64())
    }

    pub fn csv_header() -> [&'static str; 8] {
        ["preset", "q", "samples", "nondegenerate", "with_2torsion", "proportion", "stderr", "reference"]
    }

    pub fn csv_record(&self) -> [String; 8] {
        [
            self.label.clone(),
            self.q.to_string(),
            self.attempted.to_string(),
            self.nondegenerate.to_string(),
            self.with_2torsion.to_string(),
            self.proportion_f64().map_or_else(String::new, |p| format!("{p:.6}")),
            self.stderr.map_or_else(String::new, |s| format!("{s:.6}")),
            self.reference.as_ref().map_or_else(String::new, |r| r.to_string()),
        ]
    }
}

/// Writes reports as CSV with the standard header.
pub fn write_csv<W: std::io::Write>(out: W, reports: &[ProportionReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Config(format!("csv: {e}"));
    w.write_record(ProportionReport::csv_header()).map_err(io)?;
    for r in reports {
        w.write_record(r.csv_record()).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Degenerate,
    Decided { torsion: bool, in_s_delta: bool, disagreement: bool },
}

struct Sampler<'a> {
    cfg: &'a ExperimentConfig,
    field: BinaryField,
    method: Method,
    admissible: bool,
    solutions: Vec<(i64, i64)>,
}

impl Sampler<'_> {
    fn decide(&self, f: &LaurentPoly, method: Method) -> Result<bool> {
        match method {
            Method::Hyperelliptic => {
                let g = self.cfg.hyperelliptic_genus.expect("checked");
                HyperModel::from_laurent(f, g)?.has_2torsion()
            }
            Method::Manin => Ok(hw_matrix_on(f, &self.cfg.polygon).manin_product().has_eigenvalue_one()),
            Method::Zeta => Ok(zeta::zeta_of(f)?.jacobian_two_data().has_2torsion),
            Method::Auto => unreachable!("resolved before sampling"),
        }
    }

    fn chunk(&self, c: usize, len: usize) -> Result<Vec<Outcome>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(c as u64);
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            let f = LaurentPoly::random_on(self.field, &self.cfg.polygon, &mut rng);
            let same_polygon = f.newton_polygon().is_ok_and(|np| np == self.cfg.polygon);
            if !same_polygon || !f.is_nondegenerate()? {
                out.push(Outcome::Degenerate);
                continue;
            }
            let torsion = self.decide(&f, self.method)?;
            let mut disagreement = false;
            if self.cfg.cross_check {
                for m in self.other_methods() {
                    disagreement |= self.decide(&f, m)? != torsion;
                }
            }
            let in_s_delta = self.admissible && self.solutions.iter().any(|&p| f.coeff(p) != 0);
            out.push(Outcome::Decided { torsion, in_s_delta, disagreement });
        }
        Ok(out)
    }

    fn other_methods(&self) -> Vec<Method> {
        let mut v = vec![Method::Manin];
        if self.cfg.hyperelliptic_genus.is_some() {
            v.push(Method::Hyperelliptic);
        }
        if zeta_applicable(self.cfg.polygon.genus(), self.cfg.r) {
            v.push(Method::Zeta);
        }
        v.retain(|&m| m != self.method);
        v
    }
}

/// Samples uniform coefficient vectors on the lattice points of the
/// polygon, keeps the non-degenerate ones whose Newton polygon is the whole
/// polygon, and decides rational 2-torsion for each.
pub fn run_census(cfg: &ExperimentConfig) -> Result<ProportionReport> {
    let field = make_field(cfg.r)?;
    let method = cfg.resolved_method()?;
    let admissible = cfg.polygon.classify() == Classification::Admissible;
    let solutions = cfg.polygon.congruence_solutions().in_polygon;
    let sampler = Sampler { cfg, field, method, admissible, solutions };

    let outcomes: Vec<Outcome> = match cfg.target {
        SampleTarget::Attempted => {
            let chunks = cfg.samples.div_ceil(CHUNK);
            let parts: Vec<Vec<Outcome>> = (0..chunks)
                .into_par_iter()
                .map(|c| sampler.chunk(c, CHUNK.min(cfg.samples - c * CHUNK)))
                .collect::<Result<_>>()?;
            parts.concat()
        }
        SampleTarget::Nondegenerate => {
            let mut all = Vec::new();
            let mut found = 0usize;
            let mut next = 0usize;
            'rounds: while found < cfg.samples {
                if next * CHUNK >= cfg.max_attempts {
                    return Err(Error::Budget(format!(
                        "{found} of {} non-degenerate samples after {} draws",
                        cfg.samples,
                        next * CHUNK
                    )));
                }
                let parts: Vec<Vec<Outcome>> = (next..next + ROUND)
                    .into_par_iter()
                    .map(|c| sampler.chunk(c, CHUNK))
                    .collect::<Result<_>>()?;
                next += ROUND;
                for o in parts.into_iter().flatten() {
                    all.push(o);
                    if o != Outcome::Degenerate {
                        found += 1;
                        if found == cfg.samples {
                            break 'rounds;
                        }
                    }
                }
            }
            all
        }
    };

    let mut report = ProportionReport {
        label: cfg.label.clone(),
        q: field.size(),
        attempted: outcomes.len(),
        nondegenerate: 0,
        with_2torsion: 0,
        proportion: None,
        stderr: None,
        reference: Some(polygon_reference(&cfg.polygon, cfg.hyperelliptic_genus)),
        in_s_delta: 0,
        s_delta_without_torsion: 0,
        disagreements: 0,
    };
    for o in outcomes {
        if let Outcome::Decided { torsion, in_s_delta, disagreement } = o {
            report.nondegenerate += 1;
            report.with_2torsion += usize::from(torsion);
            report.in_s_delta += usize::from(in_s_delta);
            report.s_delta_without_torsion += usize::from(in_s_delta && !torsion);
            report.disagreements += usize::from(disagreement);
        }
    }
    if report.nondegenerate > 0 {
        let n = report.nondegenerate;
        let p = BigRational::new(BigInt::from(report.with_2torsion), BigInt::from(n));
        let pf = p.to_f64().unwrap_or(0.0);
        report.stderr = Some((pf * (1.0 - pf) / n as f64).sqrt());
        report.proportion = Some(p);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceKind {
    /// A random element of `GL_g(F_2)` fixes a nonzero vector.
    Glg,
    HypEven,
    HypOdd,
}

/// Exact limiting proportions. For `Glg` this is
/// `-sum_{s=1}^{g} prod_{j=1}^{s} 1/(1 - 2^j)`.
pub fn reference_probability(kind: ReferenceKind, g: usize) -> BigRational {
    match kind {
        ReferenceKind::HypOdd => BigRational::one(),
        ReferenceKind::HypEven => BigRational::new(BigInt::from(g), BigInt::from(g + 1)),
        ReferenceKind::Glg => {
            let mut sum = BigRational::zero();
            let mut prod = BigRational::one();
            for j in 1..=g {
                let d = BigInt::one() - (BigInt::one() << j);
                prod /= BigRational::from_integer(d);
                sum += &prod;
            }
            -sum
        }
    }
}

/// 1 when the lattice condition forces 2-torsion, the hyperelliptic limit
/// on hyperelliptic polygons, and the `GL_g(F_2)` value otherwise.
pub fn polygon_reference(polygon: &LatticePolygon, hyperelliptic_genus: Option<usize>) -> BigRational {
    if polygon.classify() == Classification::Admissible {
        return BigRational::one();
    }
    match hyperelliptic_genus {
        Some(g) if g % 2 == 0 => reference_probability(ReferenceKind::HypEven, g),
        Some(_) => reference_probability(ReferenceKind::HypOdd, 0),
        None => reference_probability(ReferenceKind::Glg, polygon.genus()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypCensus {
    pub g: usize,
    pub r: u32,
    /// Smooth models `(h1, h0)` among all coefficient vectors.
    #[serde(serialize_with = "ser_display")]
    pub smooth: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub with_2torsion: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub proportion: BigRational,
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn census(g: usize, r: u32, smooth: BigInt, with: BigInt) -> Result<HypCensus> {
    if smooth.is_zero() {
        return Err(Error::InvalidModel("no smooth models".into()));
    }
    let proportion = BigRational::new(with.clone(), smooth.clone());
    Ok(HypCensus { g, r, smooth, with_2torsion: with, proportion })
}

/// Every pair `(h1, h0)` with `deg h1 <= g+1`, `deg h0 <= 2g+2` over
/// `GF(2^r)`, tested one by one. Refuses when `q^(3g+5)` exceeds `budget`.
pub fn exhaustive_hyp_census(g: usize, r: u32, budget: u64) -> Result<HypCensus> {
    let field = make_field(r)?;
    let q = field.size();
    let total = (q as u128).checked_pow((3 * g + 5) as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::Budget(format!("{total} models exceed the budget of {budget}")));
    }
    let n0 = 2 * g + 3;
    let h0_count = q.pow(n0 as u32);
    let (smooth, with) = all_h1(field, g)
        .into_par_iter()
        .map(|h1| {
            let (mut s, mut w) = (0u64, 0u64);
            let mut torsion = None;
            for code in 0..h0_count {
                let h0 = UniPoly::new(field, digits(code, q, n0));
                let m = HyperModel::new(g, h1.clone(), h0).expect("degrees in range");
                if m.is_smooth() {
                    s += 1;
                    let t = *torsion.get_or_insert_with(|| m.has_2torsion().expect("smooth"));
                    w += u64::from(t);
                }
            }
            (s, w)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    census(g, r, BigInt::from(smooth), BigInt::from(with))
}

/// The same census, counting the smooth `h0` for each `h1` in closed form:
/// smoothness only constrains `h0` modulo `P^2` for each distinct prime
/// factor `P` of `H_1`, and rules out `q^{deg P}` of the `q^{2 deg P}`
/// residues there. With `2g+3` coefficients of `h0` the residue map is onto
/// with equal fibres, so `#smooth = q^{2g+3} prod_P (1 - q^{-deg P})`.
pub fn counted_hyp_census(g: usize, r: u32) -> Result<HypCensus> {
    let field = make_field(r)?;
    let q = BigInt::from(field.size());
    let (smooth, with) = all_h1(field, g)
        .into_par_iter()
        .map(|h1| {
            let m = HyperModel::new(g, h1, UniPoly::zero(field)).expect("degrees in range");
            let group = form_factor_degrees(&m);
            let sum: usize = group.iter().sum();
            let mut weight = num::pow(q.clone(), 2 * g + 3 - sum);
            for &d in &group {
                weight *= num::pow(q.clone(), d) - 1;
            }
            let torsion = {
                let m_odd = group.iter().any(|d| d % 2 == 1);
                let dim = if m_odd { group.len() - 1 } else { group.len() };
                dim >= 1
            };
            let with = if torsion { weight.clone() } else { BigInt::zero() };
            (weight, with)
        })
        .reduce(|| (BigInt::zero(), BigInt::zero()), |a, b| (a.0 + b.0, a.1 + b.1));
    census(g, r, smooth, with)
}

/// Degrees of the distinct prime factors of `H_1` as a binary form.
fn form_factor_degrees(m: &HyperModel) -> Vec<usize> {
    let mut degs: Vec<usize> =
        m.h1().factorize().expect("nonzero").into_iter().map(|(p, _)| p.degree().unwrap()).collect();
    if m.h1().degree().unwrap() < m.genus() + 1 {
        degs.push(1);
    }
    degs
}

fn all_h1(field: BinaryField, g: usize) -> Vec<UniPoly<BinaryField>> {
    let q = field.size();
    let n1 = g + 2;
    (1..q.pow(n1 as u32)).map(|code| UniPoly::new(field, digits(code, q, n1))).collect()
}

fn digits(mut code: u64, q: u64, n: usize) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = (code % q) as u32;
            code /= q;
            d
        })
        .collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RankScanReport {
    pub label: String,
    pub genus: usize,
    pub rho: usize,
    /// Non-degenerate samples with every solution coefficient set to zero.
    pub zeroed_samples: usize,
    pub zeroed_max_rank: Option<usize>,
    /// Zeroed samples with rank above `g - rho`.
    pub zeroed_violations: usize,
    pub unrestricted_samples: usize,
    /// Range of `rank - (g - rho)` over unrestricted samples.
    pub min_excess: Option<i64>,
    pub max_excess: Option<i64>,
    /// Counts indexed by `[rank == g - rho][all solution coefficients zero]`.
    pub truth_table: [[usize; 2]; 2],
    /// Unrestricted samples with rank below `g - rho`, as curve JSON.
    pub below_bound: Vec<serde_json::Value>,
    /// Samples contradicting a proved rank statement for this polygon.
    pub theorem_violations: Vec<String>,
}

/// Rank of the Hasse–Witt matrix against `g - rho` on the polygon of `cfg`:
/// first with every solution coefficient zeroed, then unrestricted. Rank
/// statements known for plane curves of odd degree, the exceptional
/// polygon and odd-genus hyperelliptic polygons are checked on every
/// sample.
pub fn rank_bound_scan(cfg: &ExperimentConfig) -> Result<RankScanReport> {
    let polygon = &cfg.polygon;
    let field = make_field(cfg.r)?;
    let g = polygon.genus();
    let solutions = polygon.congruence_solutions().in_polygon;
    let rho = solutions.len();
    let bound = g as i64 - rho as i64;
    let plane_degree = triangle_degree(polygon);
    let exceptional = *polygon == LatticePolygon::exceptional();

    let sample = |c: usize, zeroed: bool| -> Result<Vec<(LaurentPoly, usize)>> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ u64::from(zeroed) << 63);
        rng.set_stream(c as u64);
        let mut out = Vec::new();
        for _ in 0..CHUNK {
            let mut f = LaurentPoly::random_on(field, polygon, &mut rng);
            if zeroed {
                let terms = f.terms().iter().filter(|(p, _)| !solutions.contains(p)).map(|(p, c)| (*p, *c));
                f = LaurentPoly::new(field, terms.collect::<Vec<_>>());
            }
            if f.newton_polygon().is_ok_and(|np| np == *polygon) && f.is_nondegenerate()? {
                let rank = hw_matrix_on(&f, polygon).rank();
                out.push((f, rank));
            }
        }
        Ok(out)
    };
    let collect = |zeroed: bool| -> Result<Vec<(LaurentPoly, usize)>> {
        let mut all = Vec::new();
        let mut next = 0;
        while all.len() < cfg.samples {
            if next * CHUNK >= cfg.max_attempts {
                return Err(Error::Budget(format!("{} of {} samples after {} draws", all.len(), cfg.samples, next * CHUNK)));
            }
            let parts: Vec<Vec<_>> = (next..next + ROUND).into_par_iter().map(|c| sample(c, zeroed)).collect::<Result<_>>()?;
            next += ROUND;
            all.extend(parts.into_iter().flatten());
        }
        all.truncate(cfg.samples);
        Ok(all)
    };

    let mut rep = RankScanReport { label: cfg.label.clone(), genus: g, rho, ..Default::default() };
    let check_theorems = |f: &LaurentPoly, rank: usize, rep: &mut RankScanReport| {
        let all_zero = solutions.iter().all(|&p| f.coeff(p) == 0);
        if all_zero && rank as i64 > bound {
            rep.theorem_violations.push(format!("rank {rank} > {bound} with zero solution coefficients: {}", f.to_json()));
        }
        if let Some(d) = plane_degree.filter(|d| d % 2 == 1) {
            let low = (3 * (d - 1) * (d - 3) / 8) as usize;
            let odd_odd_zero = f.terms().keys().all(|&(i, j)| i % 2 == 0 || j % 2 == 0);
            if rank < low || (rank == low) != odd_odd_zero {
                rep.theorem_violations.push(format!("plane degree {d}: rank {rank}, bound {low}: {}", f.to_json()));
            }
        }
        if exceptional && rank != 3 {
            rep.theorem_violations.push(format!("exceptional polygon: rank {rank}: {}", f.to_json()));
        }
        if let Some(hg) = cfg.hyperelliptic_genus.filter(|g| g % 2 == 1) {
            let formula = HyperModel::from_laurent(f, hg).and_then(|m| m.hw_rank_formula()).map(|d| d.rank);
            if formula.as_ref().ok() != Some(&rank) {
                rep.theorem_violations.push(format!("hyperelliptic rank {rank} vs {formula:?}: {}", f.to_json()));
            }
        }
    };

    // Without interior solutions the zeroed sample is the unrestricted one.
    let zeroed = if solutions.is_empty() { Vec::new() } else { collect(true)? };
    for (f, rank) in zeroed {
        rep.zeroed_samples += 1;
        rep.zeroed_max_rank = Some(rep.zeroed_max_rank.map_or(rank, |m| m.max(rank)));
        rep.zeroed_violations += usize::from(rank as i64 > bound);
        check_theorems(&f, rank, &mut rep);
    }
    for (f, rank) in collect(false)? {
        rep.unrestricted_samples += 1;
        let excess = rank as i64 - bound;
        rep.min_excess = Some(rep.min_excess.map_or(excess, |m| m.min(excess)));
        rep.max_excess = Some(rep.max_excess.map_or(excess, |m| m.max(excess)));
        let all_zero = solutions.iter().all(|&p| f.coeff(p) == 0);
        rep.truth_table[usize::from(excess == 0)][usize::from(all_zero)] += 1;
        if excess < 0 {
            rep.below_bound.push(f.to_json());
        }
        check_theorems(&f, rank, &mut rep);
    }
    Ok(rep)
}

/// `d` when the polygon is `conv{(0,0), (d,0), (0,d)}`.
fn triangle_degree(p: &LatticePolygon) -> Option<i64> {
    let v = p.vertices();
    let d = v.iter().map(|q| q.0).max()?;
    (LatticePolygon::triangle(d).ok().as_ref() == Some(p)).then_some(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn reference_values() {
        let expect = [ratio(1, 1), ratio(2, 3), ratio(5, 7), ratio(32, 45)];
        for (g, e) in (1..=4).zip(expect) {
            assert_eq!(reference_probability(ReferenceKind::Glg, g), e);
        }
        assert_eq!(reference_probability(ReferenceKind::HypEven, 8), ratio(8, 9));
        assert_eq!(reference_probability(ReferenceKind::HypOdd, 7), ratio(1, 1));
    }

    #[test]
    fn glg_against_matrix_census() {
        // Fraction of GL_2(F_2) and GL_3(F_2) with eigenvalue 1, by listing.
        for n in [2usize, 3] {
            let (mut inv, mut fixed) = (0u64, 0u64);
            for code in 0u32..1 << (n * n) {
                let m: Vec<u32> = (0..n).map(|i| (code >> (i * n)) & ((1 << n) - 1)).collect();
                let rank = |rows: &[u32]| {
                    let mut rows = rows.to_vec();
                    let mut r = 0;
                    for bit in 0..n {
                        if let Some(p) = (r..n).find(|&k| rows[k] >> bit & 1 == 1) {
                            rows.swap(r, p);
                            for k in 0..n {
                                if k != r && rows[k] >> bit & 1 == 1 {
                                    rows[k] ^= rows[r];
                                }
                            }
                            r += 1;
                        }
                    }
                    r
                };
                if rank(&m) == n {
                    inv += 1;
                    let shifted: Vec<u32> = m.iter().enumerate().map(|(i, row)| row ^ (1 << i)).collect();
                    fixed += u64::from(rank(&shifted) < n);
                }
            }
            assert_eq!(reference_probability(ReferenceKind::Glg, n), ratio(fixed as i64, inv as i64));
        }
    }

    #[test]
    fn presets_parse() {
        assert_eq!("H8".parse::<Preset>().unwrap(), Preset::Hyperelliptic(8));
        assert_eq!("e".parse::<Preset>().unwrap(), Preset::Exceptional);
        assert_eq!("S3".parse::<Preset>().unwrap(), Preset::Square(3));
        assert_eq!("T5".parse::<Preset>().unwrap(), Preset::Triangle(5));
        assert!("X1".parse::<Preset>().is_err());
        assert_eq!(Preset::Square(3).to_string(), "S3");
    }

    #[test]
    fn table_references() {
        let r = |p: Preset| {
            let cfg = ExperimentConfig::preset(p, 1, 1, 0).unwrap();
            polygon_reference(&cfg.polygon, cfg.hyperelliptic_genus)
        };
        assert_eq!(r(Preset::Square(3)), ratio(32, 45));
        assert_eq!(r(Preset::Square(4)), ratio(1, 1));
        assert_eq!(r(Preset::Hyperelliptic(8)), ratio(8, 9));
        assert_eq!(r(Preset::Hyperelliptic(7)), ratio(1, 1));
        assert_eq!(r(Preset::Exceptional), ratio(5, 7));
    }

    #[test]
    fn counting_matches_enumeration() {
        for r in [1, 2] {
            let direct = exhaustive_hyp_census(2, r, 1 << 23).unwrap();
            let counted = counted_hyp_census(2, r).unwrap();
            assert_eq!(direct, counted);
        }
    }

    #[test]
    fn census_is_deterministic_and_thread_independent() {
        let mut cfg = ExperimentConfig::preset(Preset::Exceptional, 1, 600, 5).unwrap();
        cfg.cross_check = true;
        let a = run_census(&cfg).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| run_census(&cfg)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.attempted, 600);
        assert_eq!(a.disagreements, 0);
        cfg.target = SampleTarget::Nondegenerate;
        cfg.samples = 50;
        let c = run_census(&cfg).unwrap();
        assert_eq!(c.nondegenerate, 50);
    }

    #[test]
    fn empty_census_reports_counts() {
        let cfg = ExperimentConfig::preset(Preset::Square(2), 1, 300, 1).unwrap();
        let rep = run_census(&cfg).unwrap();
        assert_eq!(rep.nondegenerate, 0);
        assert_eq!(rep.proportion, None);
        let mut csv = Vec::new();
        write_csv(&mut csv, &[rep]).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(text.lines().next().unwrap(), "preset,q,samples,nondegenerate,with_2torsion,proportion,stderr,reference");
        assert_eq!(text.lines().nth(1).unwrap(), "S2,2,300,0,0,,,1");
    }

    #[test]
    fn method_mismatch_is_rejected() {
        let mut cfg = ExperimentConfig::preset(Preset::Square(3), 1, 10, 0).unwrap();
        cfg.method = Method::Hyperelliptic;
        assert!(matches!(run_census(&cfg), Err(Error::Config(_))));
        let mut cfg = ExperimentConfig::preset(Preset::Hyperelliptic(8), 4, 10, 0).unwrap();
        cfg.method = Method::Zeta;
        assert!(matches!(run_census(&cfg), Err(Error::Config(_))));
    }
}
