//! Certified Perron root of a nonnegative irreducible interval matrix.
//!
//! Power iteration with Collatz–Wielandt bounds: for any positive vector
//! `v`, `min_i (Mv)_i / v_i <= lambda <= max_i (Mv)_i / v_i`.  Two details
//! make the bounds converge for every irreducible input:
//!
//! * imprimitive matrices are replaced by `M^rho` (`rho` the cyclic index,
//!   computed exactly from the zero pattern), whose diagonal blocks are
//!   primitive and share the Perron root `lambda^rho`;
//! * repeated squaring accelerates slow spectral gaps: iterating on
//!   `M^(rho * 2^s)` and dividing the log enclosure by `rho * 2^s` also
//!   divides its width, so poorly conditioned cases still reach the target.
//!
//! The result is an enclosure of `ln(lambda)`; callers that need `lambda`
//! itself can exponentiate.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::num::dyadic::{Dyadic, Round};
use crate::num::Enclosure;

/// Enclosure of `ln(Perron root)` of a nonnegative irreducible interval
/// matrix, with width `<= 2^-n`.
///
/// Every entry must be either exactly zero or certainly positive, so the
/// zero pattern (and hence irreducibility and the cyclic index) is exact.
pub fn perron_log_enclosure(m: &[Vec<Enclosure>], n: u32) -> Result<Enclosure> {
    let dim = m.len();
    if dim == 0 || m.iter().any(|r| r.len() != dim) {
        return Err(Error::InvalidInput(String::from("matrix not square")));
    }
    let mut pattern = vec![vec![false; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let e = &m[i][j];
            if e.lo().is_negative() {
                return Err(Error::InvalidInput(String::from("negative matrix entry")));
            }
            if e.hi().is_positive() {
                if !e.lo().is_positive() {
                    return Err(Error::InvalidInput(String::from(
                        "entry interval straddles zero; zero pattern must be exact",
                    )));
                }
                pattern[i][j] = true;
            }
        }
    }
    if !pattern_irreducible(&pattern) {
        return Err(Error::Reducible);
    }
    let rho = cyclic_index(&pattern);

    for attempt in 0..4u32 {
        let wp = n + 24 + (n + 32) * attempt;
        if let Some(enc) = iterate(m, rho, wp, n) {
            return Ok(enc);
        }
    }
    Err(Error::PrecisionNotReached)
}

fn iterate(m: &[Vec<Enclosure>], rho: u64, wp: u32, n: u32) -> Option<Enclosure> {
    let dim = m.len();
    let mut mat = mat_pow(m, rho, wp);
    let mut t: i64 = rho as i64;
    let mut v: Vec<Dyadic> = vec![Dyadic::one(); dim];
    let mut best: Option<Enclosure> = None;
    // Squaring an interval matrix is cubic in the dimension; keep it for
    // small arenas where it pays off.
    let max_squares = if dim <= 192 { 28 } else { 4 };
    let mut squares = 0u32;
    let max_rounds = 640usize;
    for round in 0..max_rounds {
        let w = matvec(&mat, &v, wp);
        let mut rlo: Option<Dyadic> = None;
        let mut rhi: Option<Dyadic> = None;
        for i in 0..dim {
            if !w[i].lo().is_positive() {
                // Widths too coarse for a positive lower bound; retry at a
                // higher working precision.
                return None;
            }
            let lo = w[i].lo().div_round(&v[i], wp, Round::Floor);
            let hi = w[i].hi().div_round(&v[i], wp, Round::Ceil);
            rlo = Some(match rlo {
                None => lo,
                Some(c) => Dyadic::min_dyadic(&c, &lo),
            });
            rhi = Some(match rhi {
                None => hi,
                Some(c) => Dyadic::max_dyadic(&c, &hi),
            });
        }
        let rlo = rlo.unwrap();
        let rhi = rhi.unwrap();
        // Cheap pre-test before the log: ln(rhi/rlo) ~ gap/rlo must come
        // under t * 2^-n for the certified width to reach the target.
        let gap = rhi.sub_round(&rlo, wp, Round::Ceil);
        let plausible = gap
            .cmp_dyadic(&rlo.mul_round(&Dyadic::from_int(t), 48, Round::Floor).mul_pow2(-(n as i64) + 1))
            != core::cmp::Ordering::Greater;
        if plausible || round + 1 == max_rounds {
            let lam_pow = Enclosure::new(rlo, rhi);
            let ln_pow = lam_pow.ln(wp).ok()?;
            let enc = Enclosure::new(
                ln_pow.lo().div_round(&Dyadic::from_int(t), wp, Round::Floor),
                ln_pow.hi().div_round(&Dyadic::from_int(t), wp, Round::Ceil),
            );
            // Every round's enclosure contains ln(lambda); intersect to
            // keep the tightest certified bound seen so far.
            best = Some(match best {
                None => enc,
                Some(b) => b.intersect(&enc).unwrap_or(b),
            });
            let b = best.as_ref().unwrap();
            if b.width_leq_pow2(-(n as i64)) {
                return best;
            }
        }
        // Next vector: normalized midpoints (scaling by a power of two is
        // exact, so positivity and containment are unaffected).
        let mut nv: Vec<Dyadic> = w.iter().map(|e| e.mid().round(wp, Round::Floor)).collect();
        if nv.iter().any(|x| !x.is_positive()) {
            return None;
        }
        let msb = nv.iter().map(|x| x.msb()).max().unwrap();
        for x in nv.iter_mut() {
            *x = x.mul_pow2(-msb);
        }
        v = nv;
        if round % 3 == 2 && squares < max_squares {
            mat = mat_mul(&mat, &mat, wp);
            t = t.checked_mul(2)?;
            squares += 1;
        }
    }
    None
}

/// Enclosure of the Perron root itself, width `<= 2^-n`.  Intended for
/// moderate roots (adjacency matrices and the like); the pressure path
/// works in log scale throughout and never exponentiates.
pub fn perron_enclosure(m: &[Vec<Enclosure>], n: u32) -> Result<Enclosure> {
    // First pass to learn the magnitude: the absolute error of the root
    // is the log error amplified by lambda = e^L, i.e. L * log2(e) bits.
    let rough = perron_log_enclosure(m, 8)?;
    let l_hi = rough.hi_rat();
    let magnitude = if l_hi <= Rat::from_integer(0.into()) {
        0u32
    } else {
        let scaled = &l_hi * Rat::new(3.into(), 2.into());
        let mut bits = 1u32;
        let mut pow = Rat::from_integer(1.into());
        while pow < scaled && bits < 1_000_000 {
            pow += Rat::from_integer(1.into());
            bits += 1;
        }
        bits
    };
    let log = perron_log_enclosure(m, n + magnitude + 4)?;
    let wp = n + magnitude + 16;
    let lo = crate::num::interval::exp_rat(&log.lo_rat(), wp);
    let hi = crate::num::interval::exp_rat(&log.hi_rat(), wp);
    Ok(Enclosure::new(lo.lo().clone(), hi.hi().clone()))
}

/// Approximate Perron data: a certified enclosure of the root plus
/// rational approximations of the right and left Perron vectors.  The
/// vectors are not certified; callers validate the measures built from
/// them a posteriori (row normalization, stationarity defect, variational
/// tests).
pub struct PerronData {
    pub log_lambda: Enclosure,
    pub right: Vec<Rat>,
    pub left: Vec<Rat>,
}

use crate::num::Rat;

/// Power iteration on `M + I` (primitive for irreducible `M`) until the
/// Collatz–Wielandt gap drops below `2^-bits`; intended for matrices with
/// Perron root bounded away from zero, where the `+I` shift keeps both the
/// gap and the final `-1` subtraction harmless.
pub fn perron_vectors(m: &[Vec<Enclosure>], bits: u32) -> Result<PerronData> {
    let dim = m.len();
    if dim == 0 || m.iter().any(|r| r.len() != dim) {
        return Err(Error::InvalidInput(String::from("matrix not square")));
    }
    let mut pattern = alloc::vec![alloc::vec![false; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if m[i][j].hi().is_positive() {
                if !m[i][j].lo().is_positive() {
                    return Err(Error::InvalidInput(String::from(
                        "entry interval straddles zero; zero pattern must be exact",
                    )));
                }
                pattern[i][j] = true;
            }
        }
    }
    if !pattern_irreducible(&pattern) {
        return Err(Error::Reducible);
    }
    let wp = bits + 32;
    let mt: Vec<Vec<Enclosure>> =
        (0..dim).map(|i| (0..dim).map(|j| m[j][i].clone()).collect()).collect();
    let shifted_matvec = |mat: &[Vec<Enclosure>], v: &[Dyadic]| -> Vec<Enclosure> {
        let mut w = matvec(mat, v, wp);
        for i in 0..dim {
            w[i] = w[i].add(&Enclosure::point(v[i].clone()), wp);
        }
        w
    };
    let normalize = |v: &mut Vec<Dyadic>| {
        let msb = v.iter().map(|x| x.msb()).max().unwrap();
        for x in v.iter_mut() {
            *x = x.mul_pow2(-msb);
        }
    };
    let mut right: Vec<Dyadic> = alloc::vec![Dyadic::one(); dim];
    let mut left: Vec<Dyadic> = alloc::vec![Dyadic::one(); dim];
    let budget = 4096usize;
    for _ in 0..budget {
        let wr = shifted_matvec(m, &right);
        let wl = shifted_matvec(&mt, &left);
        // CW bounds for lambda + 1 from the right iterate.
        let mut rlo: Option<Dyadic> = None;
        let mut rhi: Option<Dyadic> = None;
        for i in 0..dim {
            if !wr[i].lo().is_positive() {
                return Err(Error::PrecisionNotReached);
            }
            let lo = wr[i].lo().div_round(&right[i], wp, Round::Floor);
            let hi = wr[i].hi().div_round(&right[i], wp, Round::Ceil);
            rlo = Some(match rlo {
                None => lo,
                Some(c) => Dyadic::min_dyadic(&c, &lo),
            });
            rhi = Some(match rhi {
                None => hi,
                Some(c) => Dyadic::max_dyadic(&c, &hi),
            });
        }
        let shift_lo = rlo.unwrap().sub_round(&Dyadic::one(), wp, Round::Floor);
        let shift_hi = rhi.unwrap().sub_round(&Dyadic::one(), wp, Round::Ceil);
        let mut nr: Vec<Dyadic> = wr.iter().map(|e| e.mid().round(wp, Round::Floor)).collect();
        let mut nl: Vec<Dyadic> = wl.iter().map(|e| e.mid().round(wp, Round::Floor)).collect();
        if nr.iter().chain(nl.iter()).any(|x| !x.is_positive()) {
            return Err(Error::PrecisionNotReached);
        }
        normalize(&mut nr);
        normalize(&mut nl);
        right = nr;
        left = nl;
        if shift_lo.is_positive() {
            let gap = shift_hi.sub_round(&shift_lo, wp, Round::Ceil);
            if gap.leq_pow2(-(bits as i64)) {
                let lam = Enclosure::new(shift_lo, shift_hi);
                return Ok(PerronData {
                    log_lambda: lam.ln(wp)?,
                    right: right.iter().map(Dyadic::to_rat).collect(),
                    left: left.iter().map(Dyadic::to_rat).collect(),
                });
            }
        }
    }
    Err(Error::PrecisionNotReached)
}

fn matvec(m: &[Vec<Enclosure>], v: &[Dyadic], wp: u32) -> Vec<Enclosure> {
    let dim = m.len();
    let mut out = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut lo = Dyadic::zero();
        let mut hi = Dyadic::zero();
        for j in 0..dim {
            let e = &m[i][j];
            if e.hi().is_positive() {
                lo = lo.add_round(&e.lo().mul_round(&v[j], wp, Round::Floor), wp, Round::Floor);
                hi = hi.add_round(&e.hi().mul_round(&v[j], wp, Round::Ceil), wp, Round::Ceil);
            }
        }
        out.push(Enclosure::new(lo, hi));
    }
    out
}

pub(crate) fn mat_mul(a: &[Vec<Enclosure>], b: &[Vec<Enclosure>], wp: u32) -> Vec<Vec<Enclosure>> {
    let dim = a.len();
    let mut out = vec![vec![Enclosure::zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut lo = Dyadic::zero();
            let mut hi = Dyadic::zero();
            for k in 0..dim {
                let x = &a[i][k];
                let y = &b[k][j];
                if x.hi().is_positive() && y.hi().is_positive() {
                    lo = lo.add_round(&x.lo().mul_round(y.lo(), wp, Round::Floor), wp, Round::Floor);
                    hi = hi.add_round(&x.hi().mul_round(y.hi(), wp, Round::Ceil), wp, Round::Ceil);
                }
            }
            out[i][j] = Enclosure::new(lo, hi);
        }
    }
    out
}

fn mat_pow(m: &[Vec<Enclosure>], e: u64, wp: u32) -> Vec<Vec<Enclosure>> {
    let mut out = m.to_vec();
    for _ in 1..e {
        out = mat_mul(&out, m, wp);
    }
    out
}

fn pattern_irreducible(p: &[Vec<bool>]) -> bool {
    let d = p.len();
    let mut reach = p.to_vec();
    for k in 0..d {
        for i in 0..d {
            if reach[i][k] {
                for j in 0..d {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    (0..d).all(|i| (0..d).all(|j| reach[i][j]))
}

/// Cyclic index (period) of an irreducible pattern: gcd of
/// `level(u) + 1 - level(v)` over arcs, with BFS levels from node 0.
fn cyclic_index(p: &[Vec<bool>]) -> u64 {
    let d = p.len();
    let mut level = vec![i64::MIN; d];
    let mut queue = alloc::collections::VecDeque::new();
    level[0] = 0;
    queue.push_back(0usize);
    while let Some(u) = queue.pop_front() {
        for v in 0..d {
            if p[u][v] && level[v] == i64::MIN {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut g: i64 = 0;
    for u in 0..d {
        for v in 0..d {
            if p[u][v] {
                g = gcd(g, (level[u] + 1 - level[v]).abs());
            }
        }
    }
    if g == 0 {
        1
    } else {
        g as u64
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, rat_pow2, Rat};
    use num_bigint::BigInt;
    use num_traits::One;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<Enclosure>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Enclosure::from_int(x)).collect())
            .collect()
    }

    fn parse_dec(s: &str) -> Rat {
        let (ip, fp) = s.split_once('.').unwrap_or((s, ""));
        let mut num: BigInt = ip.parse().unwrap();
        let mut den = BigInt::one();
        for c in fp.chars() {
            num = num * 10 + (c.to_digit(10).unwrap() as i64);
            den *= 10;
        }
        Rat::new(num, den)
    }

    #[test]
    fn root_enclosure_examples() {
        // Golden ratio.
        let m = int_matrix(&[&[1, 1], &[1, 0]]);
        let e = perron_enclosure(&m, 40).unwrap();
        assert!(e.contains_rat(&parse_dec("1.6180339887498948482045868343")));
        assert!(e.width() <= rat_pow2(-40));
        // All-ones d x d has root exactly d.
        for d in 2..4usize {
            let rows: Vec<Vec<i64>> = vec![vec![1; d]; d];
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let e = perron_enclosure(&int_matrix(&refs), 36).unwrap();
            assert!(e.contains_rat(&Rat::from_integer((d as i64).into())));
        }
        // Star adjacency: sqrt(3).
        let m = int_matrix(&[
            &[0, 1, 1, 1],
            &[1, 0, 0, 0],
            &[1, 0, 0, 0],
            &[1, 0, 0, 0],
        ]);
        let e = perron_enclosure(&m, 40).unwrap();
        assert!(e.contains_rat(&parse_dec("1.7320508075688772935274463415")));
    }

    #[test]
    fn golden_ratio_log() {
        let m = int_matrix(&[&[1, 1], &[1, 0]]);
        let e = perron_log_enclosure(&m, 40).unwrap();
        // ln((1+sqrt 5)/2) = 0.4812118250596034474977589134...
        assert!(e.contains_rat(&parse_dec("0.4812118250596034474977589134")));
        assert!(e.width() <= rat_pow2(-40));
    }

    #[test]
    fn all_ones_gives_log_d() {
        for d in 2..5usize {
            let rows: Vec<Vec<i64>> = vec![vec![1; d]; d];
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = int_matrix(&refs);
            let e = perron_log_enclosure(&m, 40).unwrap();
            let ln_d = crate::num::interval::ln_dyadic(&Dyadic::from_int(d as i64), 60);
            assert!(e.overlaps(&ln_d));
            assert!(e.width() <= rat_pow2(-40));
        }
    }

    #[test]
    fn star_adjacency_is_sqrt3() {
        // Star graph: center 0 connected to 1,2,3 both ways; Perron root
        // sqrt(3), so the log is ln(3)/2.
        let m = int_matrix(&[
            &[0, 1, 1, 1],
            &[1, 0, 0, 0],
            &[1, 0, 0, 0],
            &[1, 0, 0, 0],
        ]);
        let e = perron_log_enclosure(&m, 40).unwrap();
        // ln(3)/2 = 0.549306144334054845697622618...
        assert!(e.contains_rat(&parse_dec("0.549306144334054845697622618")));
        assert!(e.width() <= rat_pow2(-40));
    }

    #[test]
    fn pure_cycle_has_zero_log() {
        // 3-cycle: imprimitive with period 3, Perron root 1.
        let m = int_matrix(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let e = perron_log_enclosure(&m, 48).unwrap();
        assert!(e.contains_rat(&rat(0, 1)));
        assert!(e.width() <= rat_pow2(-48));
    }

    #[test]
    fn reducible_rejected() {
        let m = int_matrix(&[&[1, 1], &[0, 1]]);
        assert!(matches!(perron_log_enclosure(&m, 10), Err(Error::Reducible)));
    }

    #[test]
    fn interval_entries_respected() {
        // 1x1 matrix [e] has log enclosing 1.
        let e1 = crate::num::interval::exp_rat(&rat(1, 1), 60);
        let m = vec![vec![e1]];
        let e = perron_log_enclosure(&m, 40).unwrap();
        assert!(e.contains_rat(&rat(1, 1)));
    }

    #[test]
    fn two_cycles_sharing_a_node() {
        // Loops of length 2 and 3 through node 0: the growth rate is the
        // plastic number, the real root of x^3 = x + 1.
        let m = int_matrix(&[
            &[0, 1, 1, 0],
            &[1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[1, 0, 0, 0],
        ]);
        let e = perron_log_enclosure(&m, 44).unwrap();
        // Root 1.32471795724474602596...; ln = 0.28119957432367515...
        let lam = parse_dec("1.32471795724474602596090885");
        let lo = e.lo_rat();
        let hi = e.hi_rat();
        // exp(e) must contain the plastic number.
        let exp_lo = crate::num::interval::exp_rat(&lo, 60);
        let exp_hi = crate::num::interval::exp_rat(&hi, 60);
        assert!(exp_lo.lo_rat() <= lam && lam <= exp_hi.hi_rat());
        assert!(e.width() <= rat_pow2(-44));
    }
}
