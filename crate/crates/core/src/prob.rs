//! Finite-alphabet probability core and method-of-types machinery:
//! entropies, divergences, mutual information, joint and conditional types,
//! and uniform sampling from type classes.
//!
//! All quantities are in bits. The conventions 0*log 0 = 0 and
//! x*log(x/0) = +inf are applied throughout.

use crate::numeric::{xlogx, xlogx_over};
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;

/// Ingestion tolerance: a pmf whose mass deviates from 1 by more than this is
/// rejected; smaller deviations are renormalized away.
const PMF_INGEST_TOL: f64 = 1e-6;

/// Post-normalization consistency tolerance.
const PMF_SUM_TOL: f64 = 1e-12;

/// Largest number of conditional-type matrices [`enumerate_conditional_types`]
/// will agree to enumerate.
pub const ENUMERATION_GUARD: u128 = 10_000_000;

// ---------------------------------------------------------------------------
// Pmf
// ---------------------------------------------------------------------------

/// A probability mass function over a finite alphabet {0, .., n-1}, n >= 2.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    probs: Vec<f64>,
}

impl Pmf {
    /// Validate and normalize a probability vector. Entries must be
    /// nonnegative and sum to 1 within 1e-6; the stored vector is
    /// renormalized to sum to 1 within 1e-12.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "alphabet size {} < 2",
                probs.len()
            )));
        }
        if probs.iter().any(|&p| !p.is_finite() || p < 0.0) {
            return Err(Error::InvalidInput(
                "pmf entries must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PMF_INGEST_TOL {
            return Err(Error::InvalidInput(format!(
                "pmf sums to {sum}, deviates from 1 by more than {PMF_INGEST_TOL}"
            )));
        }
        let probs: Vec<f64> = probs.iter().map(|&p| p / sum).collect();
        debug_assert!((probs.iter().sum::<f64>() - 1.0).abs() <= PMF_SUM_TOL);
        Ok(Self { probs })
    }

    /// Uniform pmf over n symbols.
    pub fn uniform(n: usize) -> Self {
        assert!(n >= 2, "alphabet size must be at least 2");
        Self {
            probs: vec![1.0 / n as f64; n],
        }
    }

    /// Bernoulli(p) over {0, 1}, with P(1) = p.
    pub fn bernoulli(p: f64) -> Result<Self> {
        Self::new(vec![1.0 - p, p])
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> f64 {
        self.probs[i]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// True if the pmf is uniform within `tol` in every entry.
    pub fn is_uniform(&self, tol: f64) -> bool {
        let u = 1.0 / self.len() as f64;
        self.probs.iter().all(|&p| (p - u).abs() <= tol)
    }

    /// Indices with strictly positive mass.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.probs[i] > 0.0).collect()
    }
}

/// Entropy H(p) in bits. 0 <= H <= log2(n).
pub fn entropy(p: &Pmf) -> f64 {
    -p.probs().iter().map(|&x| xlogx(x)).sum::<f64>()
}

/// Entropy of a raw probability slice (assumed normalized), in bits.
pub(crate) fn entropy_slice(p: &[f64]) -> f64 {
    -p.iter().map(|&x| xlogx(x)).sum::<f64>()
}

// ---------------------------------------------------------------------------
// Channel
// ---------------------------------------------------------------------------

/// A discrete memoryless channel: one output pmf per input symbol
/// (a row-stochastic |X| x |Y| matrix).
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    rows: Vec<Pmf>,
}

impl Channel {
    /// Build from per-input rows; all rows must share the output alphabet.
    pub fn new(rows: Vec<Pmf>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "input alphabet size {} < 2",
                rows.len()
            )));
        }
        let y = rows[0].len();
        if rows.iter().any(|r| r.len() != y) {
            return Err(Error::DimensionMismatch(
                "channel rows have differing output alphabet sizes".into(),
            ));
        }
        Ok(Self { rows })
    }

    /// Build from a row-major matrix of transition probabilities.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(rows.into_iter().map(Pmf::new).collect::<Result<_>>()?)
    }

    /// Binary symmetric channel with crossover probability rho.
    pub fn bsc(rho: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&rho) {
            return Err(Error::InvalidInput(format!(
                "BSC crossover {rho} outside [0, 1/2]"
            )));
        }
        Self::from_rows(vec![vec![1.0 - rho, rho], vec![rho, 1.0 - rho]])
    }

    pub fn input_size(&self) -> usize {
        self.rows.len()
    }

    pub fn output_size(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row(&self, x: usize) -> &Pmf {
        &self.rows[x]
    }

    /// Transition probability p(y|x).
    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.rows[x].get(y)
    }

    /// Output marginal induced by the input pmf.
    pub fn output_marginal(&self, px: &Pmf) -> Result<Vec<f64>> {
        if px.len() != self.input_size() {
            return Err(Error::DimensionMismatch(format!(
                "input pmf over {} symbols vs channel with {} inputs",
                px.len(),
                self.input_size()
            )));
        }
        let mut out = vec![0.0; self.output_size()];
        for x in 0..self.input_size() {
            for (y, o) in out.iter_mut().enumerate() {
                *o += px.get(x) * self.prob(x, y);
            }
        }
        Ok(out)
    }
}

/// Mutual information I(p_X, p_{Y|X}) in bits.
pub fn mutual_information(px: &Pmf, ch: &Channel) -> Result<f64> {
    let qy = ch.output_marginal(px)?;
    let mut total = 0.0;
    for x in 0..ch.input_size() {
        if px.get(x) == 0.0 {
            continue;
        }
        let mut d = 0.0;
        for y in 0..ch.output_size() {
            d += xlogx_over(ch.prob(x, y), qy[y]);
        }
        total += px.get(x) * d;
    }
    Ok(total.max(0.0))
}

/// Conditional KL divergence D(q || p | p_X) in bits. Returns +inf when
/// absolute continuity fails on a row with positive input mass.
pub fn conditional_kl(q: &Channel, p: &Channel, px: &Pmf) -> f64 {
    assert_eq!(q.input_size(), p.input_size(), "input alphabets differ");
    assert_eq!(q.output_size(), p.output_size(), "output alphabets differ");
    assert_eq!(px.len(), q.input_size(), "input pmf size differs");
    let mut total = 0.0;
    for x in 0..q.input_size() {
        let w = px.get(x);
        if w == 0.0 {
            continue;
        }
        for y in 0..q.output_size() {
            let term = xlogx_over(q.prob(x, y), p.prob(x, y));
            if term.is_infinite() {
                return f64::INFINITY;
            }
            total += w * term;
        }
    }
    total.max(0.0)
}

// ---------------------------------------------------------------------------
// Types and type classes
// ---------------------------------------------------------------------------

/// Constant-composition description: symbol counts summing to the blocklength.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    counts: Vec<u64>,
}

impl Composition {
    pub fn new(counts: Vec<u64>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::InvalidInput("composition needs >= 2 symbols".into()));
        }
        if counts.iter().sum::<u64>() == 0 {
            return Err(Error::InvalidInput("composition sums to zero".into()));
        }
        Ok(Self { counts })
    }

    /// The composition closest to `px` in sup norm: truncate each probability
    /// down to a multiple of 1/N, then give the whole deficit to the symbol
    /// whose truncated value is smallest.
    pub fn nearest_to(px: &Pmf, n: u64) -> Self {
        let mut counts: Vec<u64> = px
            .probs()
            .iter()
            .map(|&p| (p * n as f64).floor() as u64)
            .collect();
        let deficit = n - counts.iter().sum::<u64>();
        let arg = (0..counts.len())
            .min_by(|&a, &b| counts[a].cmp(&counts[b]))
            .unwrap();
        counts[arg] += deficit;
        Self { counts }
    }

    pub fn blocklength(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn alphabet_size(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Empirical pmf n_x / N.
    pub fn pmf(&self) -> Pmf {
        let n = self.blocklength() as f64;
        Pmf {
            probs: self.counts.iter().map(|&c| c as f64 / n).collect(),
        }
    }

    /// The lexicographically smallest sequence with these counts.
    pub fn canonical_sequence(&self) -> Vec<u8> {
        let mut seq = Vec::with_capacity(self.blocklength() as usize);
        for (sym, &c) in self.counts.iter().enumerate() {
            seq.extend(std::iter::repeat(sym as u8).take(c as usize));
        }
        seq
    }

    /// Exact type-class cardinality as f64 (multinomial coefficient).
    pub fn class_size(&self) -> f64 {
        let mut log = 0.0;
        let mut seen = 0u64;
        for &c in &self.counts {
            for k in 1..=c {
                seen += 1;
                log += (seen as f64).ln() - (k as f64).ln();
            }
        }
        log.exp()
    }
}

/// Joint type of a pair of sequences: an |X| x |Y| count matrix summing to N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointType {
    counts: Vec<Vec<u64>>,
    n: u64,
}

impl JointType {
    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn blocklength(&self) -> u64 {
        self.n
    }

    /// Marginal composition on the first coordinate.
    pub fn x_composition(&self) -> Composition {
        Composition {
            counts: self.counts.iter().map(|r| r.iter().sum()).collect(),
        }
    }

    /// Empirical joint pmf counts/N.
    pub fn joint_pmf(&self) -> Vec<Vec<f64>> {
        let n = self.n as f64;
        self.counts
            .iter()
            .map(|r| r.iter().map(|&c| c as f64 / n).collect())
            .collect()
    }

    fn x_marginal(&self) -> Vec<f64> {
        let n = self.n as f64;
        self.counts
            .iter()
            .map(|r| r.iter().sum::<u64>() as f64 / n)
            .collect()
    }

    fn y_marginal(&self) -> Vec<f64> {
        let n = self.n as f64;
        let ylen = self.counts[0].len();
        (0..ylen)
            .map(|y| self.counts.iter().map(|r| r[y]).sum::<u64>() as f64 / n)
            .collect()
    }

    /// Empirical mutual information I(x; y) of the pair, in bits.
    pub fn mutual_information(&self) -> f64 {
        let px = self.x_marginal();
        let py = self.y_marginal();
        let n = self.n as f64;
        let mut total = 0.0;
        for (x, row) in self.counts.iter().enumerate() {
            for (y, &c) in row.iter().enumerate() {
                if c > 0 {
                    let p = c as f64 / n;
                    total += p * (p / (px[x] * py[y])).log2();
                }
            }
        }
        total.max(0.0)
    }

    /// Empirical conditional entropy H(y|x) in bits.
    pub fn conditional_entropy_y_given_x(&self) -> f64 {
        let n = self.n as f64;
        let mut h = 0.0;
        for row in &self.counts {
            let nx: u64 = row.iter().sum();
            if nx == 0 {
                continue;
            }
            for &c in row {
                if c > 0 {
                    h -= (c as f64 / n) * ((c as f64) / (nx as f64)).log2();
                }
            }
        }
        h.max(0.0)
    }

    /// Entropy of the x marginal, in bits.
    pub fn x_entropy(&self) -> f64 {
        entropy_slice(&self.x_marginal())
    }

    /// Entropy of the y marginal, in bits.
    pub fn y_entropy(&self) -> f64 {
        entropy_slice(&self.y_marginal())
    }

    /// Entropy of the joint pmf, in bits.
    pub fn joint_entropy(&self) -> f64 {
        let n = self.n as f64;
        -self
            .counts
            .iter()
            .flatten()
            .map(|&c| xlogx(c as f64 / n))
            .sum::<f64>()
    }
}

/// Joint type of two equal-length sequences over alphabets of the given sizes.
pub fn joint_type(x: &[u8], y: &[u8], x_size: usize, y_size: usize) -> Result<JointType> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "sequence lengths {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.is_empty() {
        return Err(Error::InvalidInput("empty sequences".into()));
    }
    let mut counts = vec![vec![0u64; y_size]; x_size];
    for (&a, &b) in x.iter().zip(y) {
        counts[a as usize][b as usize] += 1;
    }
    Ok(JointType {
        counts,
        n: x.len() as u64,
    })
}

/// Draw a sequence uniformly at random from the type class of `comp`,
/// as a uniformly random permutation of the canonical sequence.
pub fn sample_type_class<R: Rng + ?Sized>(comp: &Composition, rng: &mut R) -> Vec<u8> {
    let mut seq = comp.canonical_sequence();
    seq.shuffle(rng);
    seq
}

// ---------------------------------------------------------------------------
// Conditional-type enumeration
// ---------------------------------------------------------------------------

/// Iterator over all conditional-type count matrices compatible with a
/// composition: row x sums to comp.counts()[x], columns range over the
/// output alphabet.
pub struct ConditionalTypes {
    per_row: Vec<Vec<Vec<u64>>>,
    idx: Vec<usize>,
    done: bool,
}

/// All vectors of `parts` nonnegative integers summing to `total`.
fn compositions_of(total: u64, parts: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; parts];
    fn rec(total: u64, pos: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if pos == cur.len() - 1 {
            cur[pos] = total;
            out.push(cur.clone());
            return;
        }
        for v in 0..=total {
            cur[pos] = v;
            rec(total - v, pos + 1, cur, out);
        }
    }
    rec(total, 0, &mut cur, &mut out);
    out
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of conditional types for a composition and output alphabet size:
/// the product over inputs of C(n_x + |Y| - 1, |Y| - 1).
pub fn conditional_type_count(comp: &Composition, out_size: usize) -> u128 {
    comp.counts()
        .iter()
        .map(|&nx| binomial_u128(nx + out_size as u64 - 1, out_size as u64 - 1))
        .product()
}

/// Enumerate every conditional-type count matrix for `comp` with `out_size`
/// output symbols. Fails if the total count exceeds [`ENUMERATION_GUARD`].
pub fn enumerate_conditional_types(comp: &Composition, out_size: usize) -> Result<ConditionalTypes> {
    if out_size < 2 {
        return Err(Error::InvalidInput("output alphabet size < 2".into()));
    }
    let count = conditional_type_count(comp, out_size);
    if count > ENUMERATION_GUARD {
        return Err(Error::EnumerationGuard {
            count,
            limit: ENUMERATION_GUARD,
        });
    }
    let per_row: Vec<Vec<Vec<u64>>> = comp
        .counts()
        .iter()
        .map(|&nx| compositions_of(nx, out_size))
        .collect();
    Ok(ConditionalTypes {
        idx: vec![0; per_row.len()],
        per_row,
        done: false,
    })
}

impl Iterator for ConditionalTypes {
    type Item = Vec<Vec<u64>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item: Vec<Vec<u64>> = self
            .idx
            .iter()
            .zip(&self.per_row)
            .map(|(&i, opts)| opts[i].clone())
            .collect();
        // odometer increment
        let mut pos = self.idx.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.idx[pos] += 1;
            if self.idx[pos] < self.per_row[pos].len() {
                break;
            }
            self.idx[pos] = 0;
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn entropy_basics() {
        assert!(close(entropy(&Pmf::uniform(2)), 1.0, 1e-15));
        assert!(close(
            entropy(&Pmf::new(vec![1.0, 0.0]).unwrap()),
            0.0,
            1e-15
        ));
        // closed-form h2(0.1)
        assert!(close(
            entropy(&Pmf::bernoulli(0.1).unwrap()),
            0.4689955935892812,
            1e-12
        ));
    }

    #[test]
    fn pmf_validation() {
        assert!(Pmf::new(vec![1.0]).is_err());
        assert!(Pmf::new(vec![0.5, 0.6]).is_err());
        assert!(Pmf::new(vec![0.5, -0.5, 1.0]).is_err());
        // small deviation renormalized
        let p = Pmf::new(vec![0.5 + 4e-7, 0.5 + 4e-7]).unwrap();
        assert!(close(p.probs().iter().sum::<f64>(), 1.0, 1e-15));
    }

    #[test]
    fn mutual_information_cases() {
        let uni = Pmf::uniform(2);
        let identity = Channel::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(close(mutual_information(&uni, &identity).unwrap(), 1.0, 1e-15));

        let constant = Channel::from_rows(vec![vec![1.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!(close(mutual_information(&uni, &constant).unwrap(), 0.0, 1e-15));

        // BSC(0.1) capacity under uniform input
        let bsc = Channel::bsc(0.1).unwrap();
        assert!(close(
            mutual_information(&uni, &bsc).unwrap(),
            0.5310044064107188,
            1e-12
        ));

        let p3 = Pmf::uniform(3);
        assert!(mutual_information(&p3, &bsc).is_err());
    }

    #[test]
    fn conditional_kl_cases() {
        let uni = Pmf::uniform(2);
        let p = Channel::bsc(0.1).unwrap();
        assert!(close(conditional_kl(&p, &p, &uni), 0.0, 1e-15));

        // D(p_{rho_R} || p_rho | uniform) with rho_R = h2^{-1}(0.9): the
        // sphere-packing exponent of BSC(0.1) at R = 0.1.
        let rho_r = 0.31601934632360773;
        let q = Channel::bsc(rho_r).unwrap();
        assert!(close(conditional_kl(&q, &p, &uni), 0.2537607202957108, 1e-10));

        // absolute-continuity failure
        let z = Channel::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(conditional_kl(&p, &z, &uni).is_infinite());
    }

    #[test]
    fn conditional_kl_nonnegative_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let dims = (2 + rng.gen_range(0..3), 2 + rng.gen_range(0..3));
            let rand_ch = |rng: &mut ChaCha8Rng| {
                let rows = (0..dims.0)
                    .map(|_| {
                        let mut v: Vec<f64> = (0..dims.1).map(|_| rng.gen::<f64>() + 1e-3).collect();
                        let s: f64 = v.iter().sum();
                        v.iter_mut().for_each(|x| *x /= s);
                        v
                    })
                    .collect();
                Channel::from_rows(rows).unwrap()
            };
            let q = rand_ch(&mut rng);
            let p = rand_ch(&mut rng);
            let mut v: Vec<f64> = (0..dims.0).map(|_| rng.gen::<f64>() + 1e-3).collect();
            let s: f64 = v.iter().sum();
            v.iter_mut().for_each(|x| *x /= s);
            let px = Pmf::new(v).unwrap();
            let d = conditional_kl(&q, &p, &px);
            assert!(d >= 0.0, "KL must be nonnegative, got {d}");
            let same = conditional_kl(&q, &q, &px);
            assert!(same.abs() < 1e-12, "KL(q,q) must vanish, got {same}");
        }
    }

    #[test]
    fn joint_type_examples() {
        // identical balanced sequences
        let jt = joint_type(&[0, 1, 0, 1], &[0, 1, 0, 1], 2, 2).unwrap();
        assert!(close(jt.mutual_information(), 1.0, 1e-15));

        // product-form count table
        let jt = joint_type(&[0, 0, 1, 1], &[0, 1, 0, 1], 2, 2).unwrap();
        assert!(close(jt.mutual_information(), 0.0, 1e-15));

        // constant pair
        let jt = joint_type(&[0, 0, 0, 0], &[0, 0, 0, 0], 2, 2).unwrap();
        assert!(close(jt.mutual_information(), 0.0, 1e-15));
        assert!(close(jt.conditional_entropy_y_given_x(), 0.0, 1e-15));

        assert!(joint_type(&[0, 1], &[0], 2, 2).is_err());
    }

    #[test]
    fn joint_type_identity_random() {
        // I(x;y) = H(x) + H(y) - H(x,y) for sampled pairs
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = 3 + rng.gen_range(0..40);
            let x: Vec<u8> = (0..n).map(|_| rng.gen_range(0..3)).collect();
            let y: Vec<u8> = (0..n).map(|_| rng.gen_range(0..4)).collect();
            let jt = joint_type(&x, &y, 3, 4).unwrap();
            let lhs = jt.mutual_information();
            let rhs = jt.x_entropy() + jt.y_entropy() - jt.joint_entropy();
            assert!(close(lhs, rhs, 1e-12), "identity violated: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn sampling_stays_in_class() {
        let comp = Composition::new(vec![3, 5, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10_000 {
            let seq = sample_type_class(&comp, &mut rng);
            let mut counts = [0u64; 3];
            for &s in &seq {
                counts[s as usize] += 1;
            }
            assert_eq!(counts.to_vec(), comp.counts());
        }
    }

    #[test]
    fn sampling_singleton_class() {
        let comp = Composition::new(vec![3, 0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert_eq!(sample_type_class(&comp, &mut rng), vec![0, 0, 0]);
        }
    }

    #[test]
    fn sampling_uniform_chi_square() {
        // N=4, counts (2,2): six arrangements, each with probability 1/6.
        let comp = Composition::new(vec![2, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let draws = 30_000usize;
        let mut hist = std::collections::HashMap::new();
        for _ in 0..draws {
            let seq = sample_type_class(&comp, &mut rng);
            *hist.entry(seq).or_insert(0usize) += 1;
        }
        assert_eq!(hist.len(), 6, "all six arrangements must appear");
        let expected = draws as f64 / 6.0;
        let chi2: f64 = hist
            .values()
            .map(|&o| {
                let d = o as f64 - expected;
                d * d / expected
            })
            .sum();
        // 99.9% quantile of chi-square with 5 dof is 20.5
        assert!(chi2 < 20.5, "chi-square {chi2} too large for uniformity");
    }

    #[test]
    fn type_class_size_bounds() {
        // (N+1)^{-|X|} 2^{N H} <= |T_x| <= 2^{N H}, exact for binary N <= 12
        for n in 1u64..=12 {
            for k in 0..=n {
                let comp = Composition::new(vec![n - k, k]).unwrap();
                let size = comp.class_size();
                let h = entropy(&comp.pmf());
                let upper = (n as f64 * h).exp2();
                let lower = upper / ((n as f64 + 1.0).powi(2));
                assert!(
                    size <= upper * (1.0 + 1e-12),
                    "upper bound fails at N={n}, k={k}: {size} > {upper}"
                );
                assert!(
                    size >= lower * (1.0 - 1e-12),
                    "lower bound fails at N={n}, k={k}: {size} < {lower}"
                );
            }
        }
        // spot value from the spec: N=10, counts (5,5)
        let comp = Composition::new(vec![5, 5]).unwrap();
        assert!((comp.class_size() - 252.0).abs() < 1e-9);
    }

    #[test]
    fn conditional_type_enumeration_counts() {
        let comp = Composition::new(vec![1, 1]).unwrap();
        assert_eq!(conditional_type_count(&comp, 2), 4);
        assert_eq!(enumerate_conditional_types(&comp, 2).unwrap().count(), 4);

        let comp = Composition::new(vec![2, 2]).unwrap();
        assert_eq!(enumerate_conditional_types(&comp, 2).unwrap().count(), 9);

        let n = 7u64;
        let comp = Composition::new(vec![n, 0]).unwrap();
        assert_eq!(
            enumerate_conditional_types(&comp, 2).unwrap().count() as u64,
            n + 1
        );

        // every matrix respects the row sums
        let comp = Composition::new(vec![3, 2]).unwrap();
        for m in enumerate_conditional_types(&comp, 3).unwrap() {
            assert_eq!(m[0].iter().sum::<u64>(), 3);
            assert_eq!(m[1].iter().sum::<u64>(), 2);
        }
    }

    #[test]
    fn enumeration_guard_trips() {
        let comp = Composition::new(vec![500, 500]).unwrap();
        match enumerate_conditional_types(&comp, 8) {
            Err(Error::EnumerationGuard { .. }) => {}
            other => panic!("expected guard error, got {other:?}"),
        }
    }

    #[test]
    fn nearest_composition() {
        let px = Pmf::bernoulli(0.35).unwrap();
        let comp = Composition::nearest_to(&px, 20);
        assert_eq!(comp.counts(), &[13, 7]);
        assert_eq!(comp.blocklength(), 20);
        // sup-norm distance within |X|/N
        let q = comp.pmf();
        for i in 0..2 {
            assert!((q.get(i) - px.get(i)).abs() <= 2.0 / 20.0);
        }
    }
}
