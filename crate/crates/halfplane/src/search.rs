//! Global supremum estimation over the half-plane.
//!
//! A search runs in expanding stages. The final stage covers the requested
//! region; earlier stages cover sub-regions whose log-extent doubles from a
//! core around y = 1, so each stage's scale span is the square of the
//! previous one. The per-stage cumulative sup gives the divergence test:
//! if the sup still grows by more than `tau` between the two largest
//! stages, the statistic is flagged divergent and the reported value is the
//! observed finite max.
//!
//! Within a stage the sweep is split into the three regimes where the
//! supremands behave differently: a near-boundary strip (y below 1, log
//! grid, optionally densified), a far region (y above 1), and a central box
//! (y in [1/4, 4], |x| <= 8) where the gallery supremands peak. Heights are
//! log-spaced and abscissae sinh-spaced throughout, so boundary and tail
//! regimes are sampled geometrically.
//!
//! The best grid cells are then polished by golden-section passes in
//! asinh(x) and log(y), which is where the grids are uniform.

use crate::domain::{log_heights, sinh_abscissae, Point, ScaleLevel, SearchRegion, SupEstimate};

/// Knobs for [`sup_search`]. The defaults match the reported experiments.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Number of expanding stages; 1 sweeps only the full region.
    pub expansion_levels: usize,
    /// Divergence factor between the two largest stages.
    pub tau: f64,
    /// Golden-section rounds around each kept cell.
    pub refine_rounds: usize,
    /// Grid cells kept for refinement.
    pub top_cells: usize,
    /// Evaluations per golden-section pass.
    pub golden_iters: usize,
    /// Multiplier on the height count of the near-boundary strip.
    pub near_density: usize,
    /// Extra points injected into the sweep and the refinement set.
    pub seeds: Vec<Point>,
    /// Worker threads for grid sweeps (1 = sequential). Results do not
    /// depend on the thread count.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            expansion_levels: 6,
            tau: 1.5,
            refine_rounds: 3,
            top_cells: 5,
            golden_iters: 24,
            near_density: 1,
            seeds: Vec::new(),
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SupSearchResult {
    pub estimate: SupEstimate,
    /// Grid points whose statistic evaluated non-finite (skipped).
    pub skipped: usize,
}

#[derive(Clone, Copy, Debug)]
struct Zone {
    y_lo: f64,
    y_hi: f64,
    y_count: usize,
    x_half: f64,
    x_count: usize,
}

fn stage_zones(
    y_lo: f64,
    y_hi: f64,
    x_half: f64,
    region: &SearchRegion,
    near_density: usize,
) -> Vec<Zone> {
    let mut zones = Vec::with_capacity(3);
    let near_count = region.y_grid * near_density.max(1);
    if y_lo < 1.0 && y_hi > 1.0 {
        zones.push(Zone {
            y_lo,
            y_hi: 1.0,
            y_count: near_count,
            x_half,
            x_count: region.x_grid,
        });
        zones.push(Zone {
            y_lo: 1.0,
            y_hi,
            y_count: region.y_grid,
            x_half,
            x_count: region.x_grid,
        });
    } else {
        zones.push(Zone {
            y_lo,
            y_hi,
            y_count: if y_hi <= 1.0 {
                near_count
            } else {
                region.y_grid
            },
            x_half,
            x_count: region.x_grid,
        });
    }
    let c_lo = y_lo.max(0.25);
    let c_hi = y_hi.min(4.0);
    if c_lo < c_hi {
        zones.push(Zone {
            y_lo: c_lo,
            y_hi: c_hi,
            y_count: region.y_grid,
            x_half: x_half.min(8.0),
            x_count: region.x_grid,
        });
    }
    zones
}

fn zone_points(z: &Zone) -> Vec<Point> {
    let heights = log_heights(z.y_lo, z.y_hi, z.y_count);
    let xs = sinh_abscissae(z.x_half, z.x_count);
    let mut pts = Vec::with_capacity(heights.len() * xs.len());
    for &y in &heights {
        for &x in &xs {
            pts.push(Point::raw(x, y));
        }
    }
    pts
}

/// Chunked parallel map with a deterministic output layout.
fn eval_all(stat: &(dyn Fn(Point) -> f64 + Sync), pts: &[Point], jobs: usize) -> Vec<f64> {
    if jobs <= 1 || pts.len() < 1024 {
        return pts.iter().map(|&p| stat(p)).collect();
    }
    let mut values = vec![0.0f64; pts.len()];
    let chunk = pts.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        for (pchunk, vchunk) in pts.chunks(chunk).zip(values.chunks_mut(chunk)) {
            scope.spawn(move || {
                for (p, v) in pchunk.iter().zip(vchunk.iter_mut()) {
                    *v = stat(*p);
                }
            });
        }
    });
    values
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    value: f64,
    point: Point,
    /// Half-bracket in asinh(x).
    du: f64,
    /// Half-bracket in ln(y).
    dv: f64,
}

const INVPHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization that also probes the bracket endpoints, so a
/// sup attained at the bracket edge is returned exactly.
fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let mut best_x = a;
    let mut best_f = f(a);
    let fb = f(b);
    if fb > best_f {
        best_f = fb;
        best_x = b;
    }
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        let (x, v) = if fc > fd { (c, fc) } else { (d, fd) };
        if v > best_f {
            best_f = v;
            best_x = x;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d);
        }
    }
    let (x, v) = if fc > fd { (c, fc) } else { (d, fd) };
    if v > best_f {
        best_f = v;
        best_x = x;
    }
    (best_x, best_f)
}

fn refine(
    stat: &(dyn Fn(Point) -> f64 + Sync),
    cand: &Candidate,
    region: &SearchRegion,
    opts: &SearchOptions,
) -> (f64, Point) {
    let u_cap = region.x_max.asinh();
    let v_lo = region.y_min.ln();
    let v_hi = region.y_max.ln();
    let safe = |u: f64, v: f64| {
        let p = Point::raw(u.sinh(), v.exp());
        let s = stat(p);
        if s.is_finite() {
            s
        } else {
            f64::NEG_INFINITY
        }
    };
    let mut u = cand.point.x().asinh();
    let mut v = cand.point.y().ln();
    let mut best = cand.value;
    for _ in 0..opts.refine_rounds {
        if cand.du > 0.0 && u_cap > 0.0 {
            let (a, b) = ((u - cand.du).max(-u_cap), (u + cand.du).min(u_cap));
            let (nu, val) = golden_max(&|uu| safe(uu, v), a, b, opts.golden_iters);
            if val > best {
                best = val;
                u = nu;
            }
        }
        if cand.dv > 0.0 && v_hi > v_lo {
            let (a, b) = ((v - cand.dv).max(v_lo), (v + cand.dv).min(v_hi));
            let (nv, val) = golden_max(&|vv| safe(u, vv), a, b, opts.golden_iters);
            if val > best {
                best = val;
                v = nv;
            }
        }
    }
    (best, Point::raw(u.sinh(), v.exp()))
}

/// Estimate the supremum of `stat` over the region.
pub fn sup_search(
    stat: &(dyn Fn(Point) -> f64 + Sync),
    region: &SearchRegion,
    opts: &SearchOptions,
) -> SupSearchResult {
    let levels_n = opts.expansion_levels.max(1);
    let (ly_min, ly_max) = (region.y_min.ln(), region.y_max.ln());
    let anchor_y = 0.0f64.clamp(ly_min, ly_max);
    let u_cap = region.x_max.asinh();

    let mut skipped = 0usize;
    let mut cum_sup = f64::NEG_INFINITY;
    let mut argmax = Point::raw(0.0, region.y_min.max(f64::MIN_POSITIVE));
    let mut levels: Vec<ScaleLevel> = Vec::with_capacity(levels_n);
    let mut candidates: Vec<Candidate> = Vec::new();

    for k in 1..=levels_n {
        let t = (2.0f64).powi(k as i32 - levels_n as i32);
        let y_lo = (anchor_y + t * (ly_min - anchor_y)).exp();
        let y_hi = (anchor_y + t * (ly_max - anchor_y)).exp();
        let x_half = (t * u_cap).sinh();
        let last = k == levels_n;
        // keep the final stage bit-exact with the requested region
        let (y_lo, y_hi, x_half) = if last {
            (region.y_min, region.y_max, region.x_max)
        } else {
            (y_lo, y_hi, x_half)
        };
        for zone in stage_zones(y_lo, y_hi, x_half, region, opts.near_density) {
            let pts = zone_points(&zone);
            let values = eval_all(stat, &pts, opts.jobs);
            let du = if zone.x_count > 1 {
                zone.x_half.asinh() * 2.0 / (zone.x_count - 1) as f64
            } else {
                u_cap.max(1.0)
            };
            let dv = if zone.y_count > 1 {
                (zone.y_hi.ln() - zone.y_lo.ln()) / (zone.y_count - 1) as f64
            } else {
                (ly_max - ly_min).max(1.0)
            };
            for (p, s) in pts.iter().zip(values.iter()) {
                if !s.is_finite() {
                    skipped += 1;
                    continue;
                }
                if *s > cum_sup {
                    cum_sup = *s;
                    argmax = *p;
                }
                if last {
                    candidates.push(Candidate {
                        value: *s,
                        point: *p,
                        du: du.max(1e-12),
                        dv: dv.max(1e-12),
                    });
                }
            }
        }
        levels.push(ScaleLevel {
            scale: y_lo,
            sup: cum_sup.max(0.0),
        });
    }

    // seeds join the sweep with full-region brackets
    let seed_du = if region.x_grid > 1 {
        (u_cap * 2.0 / (region.x_grid - 1) as f64).max(1e-12)
    } else {
        u_cap.max(1.0)
    };
    let seed_dv = if region.y_grid > 1 {
        ((ly_max - ly_min) / (region.y_grid - 1) as f64).max(1e-12)
    } else {
        1.0
    };
    for &p in &opts.seeds {
        let s = stat(p);
        if !s.is_finite() {
            skipped += 1;
            continue;
        }
        if s > cum_sup {
            cum_sup = s;
            argmax = p;
        }
        candidates.push(Candidate {
            value: s,
            point: p,
            du: seed_du,
            dv: seed_dv,
        });
    }

    // polish the best cells
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&a, &b| {
        candidates[b]
            .value
            .partial_cmp(&candidates[a].value)
            .unwrap()
            .then(a.cmp(&b))
    });
    for &idx in order.iter().take(opts.top_cells) {
        let (val, p) = refine(stat, &candidates[idx], region, opts);
        if val > cum_sup {
            cum_sup = val;
            argmax = p;
        }
    }

    let cum_sup = cum_sup.max(0.0);
    if let Some(last) = levels.last_mut() {
        last.sup = cum_sup;
    }

    let divergent = levels.len() >= 2 && {
        let prev = levels[levels.len() - 2].sup;
        prev > 0.0 && levels[levels.len() - 1].sup > opts.tau * prev
    };
    // attained within the bottom grid cell of the full region
    let step_y = if region.y_grid > 1 {
        ((ly_max - ly_min) / (region.y_grid - 1) as f64).exp()
    } else {
        1.0
    };
    let boundary = argmax.y() <= region.y_min * step_y;

    SupSearchResult {
        estimate: SupEstimate {
            value: cum_sup,
            argmax,
            levels,
            divergent,
            boundary,
        },
        skipped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn region() -> SearchRegion {
        SearchRegion::default_region()
    }

    #[test]
    fn finds_interior_maximum_of_known_statistic() {
        // sup_y sqrt(y) e^{-y} = sqrt(1/2) e^{-1/2} at y = 1/2, x-independent
        let stat = |p: Point| p.y().sqrt() * (-p.y()).exp();
        let out = sup_search(&stat, &region(), &SearchOptions::default());
        let want = 0.5f64.sqrt() * (-0.5f64).exp();
        assert!(
            (out.estimate.value - want).abs() < 1e-6,
            "got {} want {want}",
            out.estimate.value
        );
        assert!((out.estimate.argmax.y() - 0.5).abs() < 1e-3);
        assert!(!out.estimate.divergent);
        assert_eq!(out.skipped, 0);
    }

    #[test]
    fn flags_divergence_of_inverse_sqrt() {
        let stat = |p: Point| 1.0 / p.y().sqrt();
        let out = sup_search(&stat, &region(), &SearchOptions::default());
        assert!(out.estimate.divergent);
        assert!(out.estimate.boundary);
        // the final stage reaches the region's smallest scale
        let last = out.estimate.levels.last().unwrap();
        assert!(last.scale <= 1e-6);
    }

    #[test]
    fn flags_divergence_of_linear_growth() {
        let stat = |p: Point| p.y();
        let out = sup_search(&stat, &region(), &SearchOptions::default());
        assert!(out.estimate.divergent);
    }

    #[test]
    fn golden_refinement_locates_off_grid_peak() {
        // peak of y/(x^2 + (y+1)^2) at x = 0, y = 1, value 1/4
        let stat = |p: Point| p.y() / (p.x() * p.x() + (p.y() + 1.0) * (p.y() + 1.0));
        let out = sup_search(&stat, &region(), &SearchOptions::default());
        assert!((out.estimate.value - 0.25).abs() < 1e-8);
        assert!(out.estimate.argmax.x().abs() < 1e-4);
        assert!((out.estimate.argmax.y() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn levels_are_monotone() {
        let stat = |p: Point| p.y().sqrt() * (-p.y()).exp();
        let out = sup_search(&stat, &region(), &SearchOptions::default());
        let sups: Vec<f64> = out.estimate.levels.iter().map(|l| l.sup).collect();
        for w in sups.windows(2) {
            assert!(w[1] >= w[0]);
        }
        assert_eq!(out.estimate.value, out.estimate.levels.last().unwrap().sup);
    }

    #[test]
    fn seeds_are_honored() {
        // needle at an off-grid spot the coarse sweep misses entirely
        let stat = |p: Point| {
            let d2 = (p.x() - 123.456).powi(2) + (p.y() - 0.0123).powi(2);
            (-d2 / 1e-8).exp()
        };
        let mut opts = SearchOptions::default();
        let plain = sup_search(&stat, &region(), &opts);
        assert!(plain.estimate.value < 0.5);
        opts.seeds = vec![Point::new(123.456, 0.0123).unwrap()];
        let seeded = sup_search(&stat, &region(), &opts);
        assert!(seeded.estimate.value > 0.999);
    }

    #[test]
    fn parallel_sweep_matches_sequential() {
        let stat = |p: Point| p.y().sqrt() * (-p.y()).exp() / (1.0 + p.x() * p.x() * 1e-12);
        let seq = sup_search(&stat, &region(), &SearchOptions::default());
        let par = sup_search(
            &stat,
            &region(),
            &SearchOptions {
                jobs: 4,
                ..SearchOptions::default()
            },
        );
        assert_eq!(seq.estimate.value, par.estimate.value);
        assert_eq!(seq.estimate.argmax, par.estimate.argmax);
    }
}
