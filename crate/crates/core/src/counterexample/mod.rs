//! The instance with a dense non-closed partial order, and its verification.
//!
//! For each enumerated pair `(x_k, y_k)` of the squared carrier, two point
//! sequences run through comparable singleton pairs along the coordinates
//! `2^k·3^n`: a zero-kind sequence assigned the limit `x_k` and a one-kind
//! sequence assigned `y_k`. Once the meet-multiplier separation conditions
//! pass, every comparable pair sequence converges to its enumerated target,
//! so the graph of the partial order is dense in the square while missing
//! any enumerated pair that is not itself comparable.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::checkers::{check_semilattice_with, Certificate, CheckReport, SemilatticeOptions};
use crate::model::{
    pair_enumerate, AdjoinedElt, Coord, Elt, IndexLaw, LimitAssignment, ModelError, SymbolicSeq,
    TriVal,
};
use crate::scan::{self, SplitMix};

/// The built instance: `2·pairs` entries, interleaved so entry `2k` is the
/// zero-kind sequence for pair `k` and entry `2k+1` the one-kind sequence.
#[derive(Clone, Debug)]
pub struct ExampleInstance {
    pairs: u64,
    assignment: LimitAssignment,
}

/// Which of the two per-pair sequences is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    ZeroSeq,
    OneSeq,
}

pub fn build_example(pairs: u64) -> Result<ExampleInstance, ModelError> {
    if pairs == 0 {
        return Err(ModelError::PairsZero);
    }
    let mut entries = Vec::with_capacity(2 * pairs as usize);
    for k in 0..pairs {
        let exp = u32::try_from(k).map_err(|_| ModelError::EncodeOverflow)?;
        let (x, y) = pair_enumerate(k);
        entries.push((
            SymbolicSeq::point(TriVal::Zero, IndexLaw::two_pow(exp))?,
            x,
        ));
        entries.push((
            SymbolicSeq::point(TriVal::One, IndexLaw::two_pow(exp))?,
            y,
        ));
    }
    Ok(ExampleInstance {
        pairs,
        assignment: LimitAssignment::new(entries)?,
    })
}

impl ExampleInstance {
    pub fn pairs(&self) -> u64 {
        self.pairs
    }

    pub fn assignment(&self) -> &LimitAssignment {
        &self.assignment
    }

    pub fn entry_index(&self, k: u64, kind: EntryKind) -> usize {
        let base = 2 * k as usize;
        match kind {
            EntryKind::ZeroSeq => base,
            EntryKind::OneSeq => base + 1,
        }
    }

    /// The enumerated limit pair `(x_k, y_k)`.
    pub fn enumerated_pair(&self, k: u64) -> (Elt, Elt) {
        pair_enumerate(k)
    }

    /// Certificate for the value-finiteness claim: for every multiplier `a`
    /// and every entry sequence `s`, `{n : a·s_n = x}` is contained in the
    /// certificate, because the law coordinate of a hit must lie in the
    /// support of `x`.
    pub fn value_certificate(&self, _k: u64, _kind: EntryKind, _mult: &AdjoinedElt, x: &Elt) -> Certificate {
        value_certificate(x)
    }

    /// Certificate for pair separation between entries `s` and `t` under
    /// multipliers `a, b` with distinct shifted limits; cross-checked by a
    /// window scan.
    pub fn separation_certificate(
        &self,
        s_index: usize,
        t_index: usize,
        a: &AdjoinedElt,
        b: &AdjoinedElt,
        scan_window: u64,
    ) -> Result<Certificate, ModelError> {
        let s = self.assignment.entry(s_index)?;
        let t = self.assignment.entry(t_index)?;
        if a.apply(&s.limit) == b.apply(&t.limit) {
            return Err(ModelError::DuplicateSequence(s_index, t_index));
        }
        let cert = separation_certificate(a, b);
        for (n, m) in scan::shared_value_pairs(&s.seq, a, &t.seq, b, scan_window) {
            debug_assert!(
                cert.contains(n) || cert.contains(m),
                "scan found a collision outside the certificate"
            );
        }
        Ok(cert)
    }
}

/// The level `n` with `coord = 2^j·3^n`, when the coordinate has no other
/// prime factors.
pub fn smooth_level(coord: &Coord) -> Option<u64> {
    if coord.is_zero() {
        return None;
    }
    let two = BigUint::from(2u8);
    let three = BigUint::from(3u8);
    let one = BigUint::from(1u8);
    let mut rest = coord.clone();
    while (&rest % &two).is_zero() {
        rest /= &two;
    }
    let mut level = 0u64;
    while (&rest % &three).is_zero() {
        rest /= &three;
        level += 1;
    }
    if rest == one {
        Some(level)
    } else {
        None
    }
}

/// `{n : some 2^j·3^n lies in the support of x}`, exact for every
/// multiplier and every instance sequence at once.
pub fn value_certificate(x: &Elt) -> Certificate {
    Certificate::exact(x.support().filter_map(|(coord, _)| smooth_level(coord)))
}

/// `{n : some 2^j·3^n lies in the support of a or b}`: outside it, the
/// multiplied sequence values keep their fresh law coordinates and cannot
/// coincide once the shifted limits differ.
pub fn separation_certificate(a: &AdjoinedElt, b: &AdjoinedElt) -> Certificate {
    let mut members = Vec::new();
    for mult in [a, b] {
        if let Some(e) = mult.elem() {
            members.extend(e.support().filter_map(|(coord, _)| smooth_level(coord)));
        }
    }
    Certificate::exact(members)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCert {
    pub a: AdjoinedElt,
    pub b: AdjoinedElt,
    pub certificate: Certificate,
}

/// Record for one enumerated pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub k: u64,
    pub x: Elt,
    pub y: Elt,
    /// The two entry sequences exist with these limits and the global
    /// verdict passed, so both converge to their targets.
    pub converges: bool,
    pub value_cert_x: Certificate,
    pub value_cert_y: Certificate,
    pub pair_cert: Option<PairCert>,
    /// Comparable singleton pairs confirmed inside the order, per pair.
    pub in_order_checked: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonClosedWitness {
    pub k: u64,
    pub x: Elt,
    pub y: Elt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheckSummary {
    pub draws: u64,
    pub scan_window: u64,
    pub violations: u64,
}

/// Full verification record for the instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub pairs: u64,
    pub window: u64,
    pub pass: bool,
    pub failure: Option<String>,
    pub check: CheckReport,
    pub per_pair: Vec<PairRecord>,
    pub nonclosed_witness: Option<NonClosedWitness>,
    /// Bound up to which every pair-sequence member was confirmed in the
    /// order.
    pub in_order_prefix: u64,
    pub spot_checks: SpotCheckSummary,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub spot_checks: u64,
    /// Scan bound for certificate cross-checks; 0 means four windows.
    pub scan_window: u64,
    pub seed: u64,
    pub check: SemilatticeOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            spot_checks: 32,
            scan_window: 0,
            seed: 0,
            check: SemilatticeOptions::default(),
        }
    }
}

/// Runs the full verification: separation conditions with exact
/// certificates, order membership of every pair-sequence member, the least
/// enumerated pair outside the order, density of the limit family at this
/// scale, and randomized certificate/scan agreement.
pub fn verify_main_theorem(
    pairs: u64,
    window: u64,
    opts: &VerifyOptions,
) -> Result<DensityReport, ModelError> {
    if window == 0 {
        return Err(ModelError::WindowZero);
    }
    let instance = build_example(pairs)?;
    let l = instance.assignment();
    let check = check_semilattice_with(l, window, &opts.check)?;

    let mut pass = check.is_pass();
    let mut failure: Option<String> = None;
    if !pass {
        failure = Some("separation conditions failed".to_string());
    } else if !check.claims.iter().all(|c| c.certificate.is_exact()) {
        pass = false;
        failure = Some("a certificate was not exact".to_string());
    }

    let scan_window = if opts.scan_window == 0 {
        4 * window
    } else {
        opts.scan_window
    };

    // per-pair records: order membership and convergence targets
    let mut per_pair = Vec::with_capacity(pairs as usize);
    let mut seen_limits = std::collections::BTreeSet::new();
    let mut all_distinct = true;
    for k in 0..pairs {
        let (x, y) = instance.enumerated_pair(k);
        let zi = instance.entry_index(k, EntryKind::ZeroSeq);
        let ui = instance.entry_index(k, EntryKind::OneSeq);
        let targets_match = *l.limit(zi) == x && *l.limit(ui) == y;
        all_distinct &= seen_limits.insert((x.clone(), y.clone()));

        let zvals = scan::eval_window(l.seq(zi), window);
        let uvals = scan::eval_window(l.seq(ui), window);
        let mut in_order = 0;
        for n in 0..window as usize {
            if zvals[n].meet(&uvals[n]) == zvals[n] {
                in_order += 1;
            } else {
                pass = false;
                failure.get_or_insert_with(|| {
                    format!("pair sequence member {k},{n} escapes the order")
                });
            }
        }

        let pair_cert = pick_pair_multipliers(l, zi, ui).map(|(a, b)| PairCert {
            certificate: separation_certificate(&a, &b),
            a,
            b,
        });
        per_pair.push(PairRecord {
            k,
            x,
            y,
            converges: targets_match && check.is_pass(),
            value_cert_x: value_certificate(l.limit(zi)),
            value_cert_y: value_certificate(l.limit(ui)),
            pair_cert,
            in_order_checked: in_order,
        });
        if !targets_match {
            pass = false;
            failure.get_or_insert_with(|| format!("pair {k} limits do not match"));
        }
    }
    if !all_distinct {
        pass = false;
        failure.get_or_insert_with(|| "enumerated pairs repeat".to_string());
    }

    // least enumerated pair outside the order
    let nonclosed_witness = (0..pairs)
        .map(|k| (k, instance.enumerated_pair(k)))
        .find(|(_, (x, y))| x.meet(y) != *x)
        .map(|(k, (x, y))| NonClosedWitness { k, x, y });
    if nonclosed_witness.is_none() {
        pass = false;
        failure.get_or_insert_with(|| {
            "no enumerated pair misses the order at this scale; raise the pair count".to_string()
        });
    }

    // randomized certificate/scan agreement
    let mut rng = SplitMix(opts.seed.wrapping_add(0x5eed));
    let mut violations = 0u64;
    let probe_pool: Vec<Elt> = {
        let mut pool = l.limits();
        for i in 0..l.len().min(8) {
            pool.push(l.seq(i).eval(rng.below(window)));
        }
        pool
    };
    let draw_mult = |rng: &mut SplitMix| -> AdjoinedElt {
        match rng.below(4) {
            0 => AdjoinedElt::Unit,
            1 => AdjoinedElt::Elem(probe_pool[rng.below(probe_pool.len() as u64) as usize].clone()),
            _ => {
                let a = &probe_pool[rng.below(probe_pool.len() as u64) as usize];
                let b = &probe_pool[rng.below(probe_pool.len() as u64) as usize];
                AdjoinedElt::Elem(a.meet(b))
            }
        }
    };
    for _ in 0..opts.spot_checks {
        let si = rng.below(l.len() as u64) as usize;
        let ti = rng.below(l.len() as u64) as usize;
        let a = draw_mult(&mut rng);
        let b = draw_mult(&mut rng);
        // value-finiteness agreement
        let target = {
            let base = probe_pool[rng.below(probe_pool.len() as u64) as usize].clone();
            match rng.below(3) {
                0 => base,
                _ => base.meet(&l.seq(si).eval(rng.below(window))),
            }
        };
        let cert = value_certificate(&target);
        for n in scan::value_hits(l.seq(si), &a, &target, scan_window) {
            if !cert.contains(n) {
                violations += 1;
            }
        }
        // pair-separation agreement
        if a.apply(l.limit(si)) != b.apply(l.limit(ti)) {
            let cert = separation_certificate(&a, &b);
            for (n, m) in
                scan::shared_value_pairs(l.seq(si), &a, l.seq(ti), &b, scan_window.min(window * 2))
            {
                if !cert.contains(n) && !cert.contains(m) {
                    violations += 1;
                }
            }
        }
    }
    if violations > 0 {
        pass = false;
        failure.get_or_insert_with(|| format!("{violations} scan violations"));
    }

    Ok(DensityReport {
        pairs,
        window,
        pass,
        failure,
        check,
        per_pair,
        nonclosed_witness,
        in_order_prefix: window,
        spot_checks: SpotCheckSummary {
            draws: opts.spot_checks,
            scan_window,
            violations,
        },
    })
}

/// First multipliers, identity included, that send the two limits apart.
fn pick_pair_multipliers(
    l: &LimitAssignment,
    i: usize,
    j: usize,
) -> Option<(AdjoinedElt, AdjoinedElt)> {
    let mut cands = vec![AdjoinedElt::Unit];
    for x in l.limits().into_iter().take(6) {
        cands.push(AdjoinedElt::Elem(x));
    }
    for a in &cands {
        for b in &cands {
            if a.apply(l.limit(i)) != b.apply(l.limit(j)) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_rejects_zero_pairs() {
        assert!(matches!(build_example(0), Err(ModelError::PairsZero)));
    }

    #[test]
    fn first_pair_entries() {
        let inst = build_example(1).unwrap();
        let l = inst.assignment();
        assert_eq!(l.len(), 2);
        assert_eq!(*l.limit(0), Elt::one_at(0u64));
        assert_eq!(*l.limit(1), Elt::one_at(0u64));
        assert_eq!(l.seq(0).eval(0), Elt::zero_at(1u64));
        assert_eq!(l.seq(1).eval(0), Elt::one_at(1u64));
    }

    #[test]
    fn entry_two_evaluates_on_its_law() {
        let inst = build_example(3).unwrap();
        let l = inst.assignment();
        let zi = inst.entry_index(2, EntryKind::ZeroSeq);
        assert_eq!(l.seq(zi).eval(0), Elt::zero_at(4u64));
    }

    #[test]
    fn sequences_pairwise_distinct() {
        let inst = build_example(50).unwrap();
        let l = inst.assignment();
        for i in 0..l.len() {
            for j in i + 1..l.len() {
                assert!(
                    !l.seq(i).same_sequence(l.seq(j)),
                    "entries {i} and {j} coincide"
                );
            }
        }
    }

    #[test]
    fn smooth_levels() {
        assert_eq!(smooth_level(&Coord::from(9u8)), Some(2));
        assert_eq!(smooth_level(&Coord::from(5u8)), None);
        assert_eq!(smooth_level(&Coord::from(6u8)), Some(1));
        assert_eq!(smooth_level(&Coord::from(12u8)), Some(1));
        assert_eq!(smooth_level(&Coord::from(0u8)), None);
        assert_eq!(smooth_level(&Coord::from(1u8)), Some(0));
    }

    #[test]
    fn value_certificate_examples() {
        let x = Elt::zero_at(9u64);
        assert_eq!(
            value_certificate(&x).members.into_iter().collect::<Vec<_>>(),
            vec![2]
        );
        let y = Elt::one_at(5u64);
        assert!(value_certificate(&y).members.is_empty());
        let z = Elt::zero_at(6u64).meet(&Elt::zero_at(12u64));
        assert_eq!(
            value_certificate(&z).members.into_iter().collect::<Vec<_>>(),
            vec![1]
        );
    }

    #[test]
    fn separation_certificate_examples() {
        let a = AdjoinedElt::Elem(Elt::zero_at(6u64));
        let b = AdjoinedElt::Elem(Elt::one_at(0u64));
        assert_eq!(
            separation_certificate(&a, &b)
                .members
                .into_iter()
                .collect::<Vec<_>>(),
            vec![1]
        );
        assert!(
            separation_certificate(&AdjoinedElt::Unit, &AdjoinedElt::Unit)
                .members
                .is_empty()
        );
        let c = AdjoinedElt::Elem(Elt::zero_at(5u64).meet(&Elt::zero_at(7u64)));
        assert!(separation_certificate(&c, &AdjoinedElt::Unit)
            .members
            .is_empty());
    }

    #[test]
    fn small_verification_passes() {
        let report = verify_main_theorem(4, 8, &VerifyOptions::default()).unwrap();
        assert!(report.pass, "failure: {:?}", report.failure);
        // the third enumerated pair is the first outside the order
        let w = report.nonclosed_witness.as_ref().unwrap();
        assert_eq!(w.k, 2);
        assert_eq!(w.x, Elt::one_at(0u64));
        assert_eq!(w.y, Elt::zero_at(0u64));
        assert_eq!(report.spot_checks.violations, 0);
    }

    #[test]
    fn single_pair_lacks_a_nonmember() {
        let report = verify_main_theorem(1, 4, &VerifyOptions::default()).unwrap();
        assert!(!report.pass);
        assert!(report.nonclosed_witness.is_none());
    }
}
