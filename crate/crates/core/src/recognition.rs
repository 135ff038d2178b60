//! Classification of inputs against class models.
//!
//! A class is represented by a state of the probabilistic model: a mixture of
//! member density operators in the quantum backend, or a probability
//! distribution over a finite alphabet in the classical backend. Distance
//! metrics give hard (one-hot) decisions; likelihoods of observed data give
//! soft Bayesian posteriors. Ties go to the lowest class index.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::math;
use crate::matrix::{partial_trace, ComplexMatrix};
use crate::quantum::{fidelity, hs_distance, mixture, trace_distance, DensityOperator, OutcomeCounts, PovmMeasurement, STATE_TOL};

/// Scores within this distance of the best one count as tied.
pub const TIE_TOL: f64 = 1e-12;

/// Frobenius distance from the product of marginals above which a global
/// state counts as correlated across the cut.
pub const PRODUCT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ClassMember {
    pub weight: f64,
    pub state: DensityOperator,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Class {
    pub name: String,
    pub prior: f64,
    pub members: Vec<ClassMember>,
}

impl Class {
    /// Class whose members all carry weight `1 / n`.
    pub fn equally_weighted(name: impl Into<String>, prior: f64, states: Vec<DensityOperator>) -> Self {
        let w = 1.0 / states.len() as f64;
        Self {
            name: name.into(),
            prior,
            members: states.into_iter().map(|state| ClassMember { weight: w, state }).collect(),
        }
    }
}

fn check_distribution(values: impl Iterator<Item = f64>) -> Result<()> {
    let mut sum = 0.0;
    let mut negative = false;
    for v in values {
        negative |= !(v >= 0.0);
        sum += v;
    }
    if negative || !((sum - 1.0).abs() <= STATE_TOL) {
        return Err(Error::WeightNormalization { sum });
    }
    Ok(())
}

/// Named classes with priors; each class state is the mixture of its members.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassModel {
    dim: usize,
    classes: Vec<Class>,
    states: Vec<DensityOperator>,
}

impl ClassModel {
    pub fn new(classes: Vec<Class>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::EmptyModel);
        }
        check_distribution(classes.iter().map(|c| c.prior))?;
        let dim = classes[0]
            .members
            .first()
            .ok_or(Error::Empty("class members"))?
            .state
            .dim();
        let mut states = Vec::with_capacity(classes.len());
        for class in &classes {
            for m in &class.members {
                if m.state.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: m.state.dim(),
                    });
                }
            }
            states.push(build_class_state(&class.members)?);
        }
        Ok(Self { dim, classes, states })
    }

    /// One class per state, equal priors, classes named `"0"`, `"1"`, ...
    pub fn from_states(states: Vec<DensityOperator>) -> Result<Self> {
        let prior = 1.0 / states.len() as f64;
        Self::new(
            states
                .into_iter()
                .enumerate()
                .map(|(i, s)| Class::equally_weighted(i.to_string(), prior, alloc::vec![s]))
                .collect(),
        )
    }

    /// Same classes with new priors.
    pub fn with_priors(&self, priors: &[f64]) -> Result<Self> {
        if priors.len() != self.classes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.classes.len(),
                found: priors.len(),
            });
        }
        check_distribution(priors.iter().copied())?;
        let mut model = self.clone();
        for (c, &p) in model.classes.iter_mut().zip(priors) {
            c.prior = p;
        }
        Ok(model)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Class] {
        &self.classes
    }

    pub fn class_states(&self) -> &[DensityOperator] {
        &self.states
    }

    pub fn priors(&self) -> Vec<f64> {
        self.classes.iter().map(|c| c.prior).collect()
    }

    pub fn names(&self) -> Vec<&str> {
        self.classes.iter().map(|c| c.name.as_str()).collect()
    }
}

/// `sum_j w_j rho_j` over the members of a class.
pub fn build_class_state(members: &[ClassMember]) -> Result<DensityOperator> {
    let states: Vec<DensityOperator> = members.iter().map(|m| m.state.clone()).collect();
    let weights: Vec<f64> = members.iter().map(|m| m.weight).collect();
    mixture(&states, &weights)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Hard,
    Soft,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Hard => "hard",
            Mode::Soft => "soft",
        }
    }
}

/// Distance or similarity used by [`classify_state`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Trace,
    Fidelity,
    HilbertSchmidt,
}

impl Metric {
    pub fn as_str(&self) -> &'static str {
        match self {
            Metric::Trace => "trace",
            Metric::Fidelity => "fidelity",
            Metric::HilbertSchmidt => "hs",
        }
    }

    /// Whether larger values mean closer.
    pub fn is_similarity(&self) -> bool {
        matches!(self, Metric::Fidelity)
    }

    pub fn evaluate(&self, a: &DensityOperator, b: &DensityOperator) -> Result<f64> {
        match self {
            Metric::Trace => trace_distance(a, b),
            Metric::Fidelity => fidelity(a, b),
            Metric::HilbertSchmidt => hs_distance(a.matrix(), b.matrix()),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trace" => Ok(Metric::Trace),
            "fidelity" => Ok(Metric::Fidelity),
            "hs" => Ok(Metric::HilbertSchmidt),
            other => Err(Error::InvalidParameter {
                name: "metric",
                reason: alloc::format!("unknown metric `{other}`"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationResult {
    /// Probability per class, in class order.
    pub posteriors: Vec<f64>,
    pub decided: usize,
    pub mode: Mode,
    /// Metric value per class (hard mode) or unnormalized log posterior
    /// (soft mode; `-inf` for excluded classes).
    pub scores: Vec<f64>,
}

/// Index of the best score; anything within [`TIE_TOL`] of the best goes to
/// the lowest index.
fn best_index(scores: &[f64], larger_is_better: bool) -> usize {
    let key = |s: f64| if larger_is_better { s } else { -s };
    let best = scores.iter().map(|&s| key(s)).fold(f64::NEG_INFINITY, f64::max);
    scores.iter().position(|&s| key(s) >= best - TIE_TOL).unwrap_or(0)
}

fn one_hot(len: usize, index: usize) -> Vec<f64> {
    (0..len).map(|i| if i == index { 1.0 } else { 0.0 }).collect()
}

/// Hard classification: nearest class state under `metric`.
pub fn classify_state(model: &ClassModel, input: &DensityOperator, metric: Metric) -> Result<ClassificationResult> {
    if model.is_empty() {
        return Err(Error::EmptyModel);
    }
    if input.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            found: input.dim(),
        });
    }
    let scores = model
        .class_states()
        .iter()
        .map(|s| metric.evaluate(input, s))
        .collect::<Result<Vec<_>>>()?;
    let decided = best_index(&scores, metric.is_similarity());
    Ok(ClassificationResult {
        posteriors: one_hot(scores.len(), decided),
        decided,
        mode: Mode::Hard,
        scores,
    })
}

/// Normalizes log posteriors. All `-inf` means no class explains the data.
fn posterior_from_logs(logs: Vec<f64>) -> Result<ClassificationResult> {
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Err(Error::AllZeroLikelihood);
    }
    let weights: Vec<f64> = logs.iter().map(|&l| math::exp(l - max)).collect();
    let z: f64 = weights.iter().sum();
    let posteriors: Vec<f64> = weights.iter().map(|w| w / z).collect();
    Ok(ClassificationResult {
        decided: best_index(&posteriors, true),
        posteriors,
        mode: Mode::Soft,
        scores: logs,
    })
}

/// `n ln p`, with `0 ln 0 = 0`.
fn log_term(n: u64, p: f64) -> f64 {
    if n == 0 {
        0.0
    } else if p > 0.0 {
        n as f64 * math::ln(p)
    } else {
        f64::NEG_INFINITY
    }
}

/// Soft classification from measurement counts:
/// `p(C_i) ∝ prior_i prod_k tr(rho_i E_k)^{n_k}`, accumulated in log space.
pub fn classify_samples(
    model: &ClassModel,
    measurement: &PovmMeasurement,
    counts: &OutcomeCounts,
) -> Result<ClassificationResult> {
    if model.is_empty() {
        return Err(Error::EmptyModel);
    }
    if measurement.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            found: measurement.dim(),
        });
    }
    if counts.values().all(|&n| n == 0) {
        return Err(Error::Empty("counts"));
    }
    if let Some((&index, _)) = counts.iter().find(|(&k, _)| k >= measurement.len()) {
        return Err(Error::UnknownOutcome {
            index,
            outcomes: measurement.len(),
        });
    }
    let mut logs = Vec::with_capacity(model.len());
    for (class, state) in model.classes().iter().zip(model.class_states()) {
        let probabilities = measurement.probabilities(state)?;
        let mut l = log_term(1, class.prior);
        for (&k, &n) in counts {
            l += log_term(n, probabilities[k]);
        }
        logs.push(l);
    }
    posterior_from_logs(logs)
}

/// A feature vector; [`FeatureVector::symbol`] is its key in a classical
/// alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector(Vec<f64>);

impl FeatureVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Comma-separated shortest round-trip representation, e.g. `"0.5,1"`.
    pub fn symbol(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|v| alloc::format!("{v}")).collect();
        parts.join(",")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalClass {
    pub name: String,
    pub prior: f64,
    /// Probability of each feature symbol; absent symbols have probability 0.
    pub distribution: BTreeMap<String, f64>,
}

/// Classes as probability distributions over a finite alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalClassModel {
    classes: Vec<ClassicalClass>,
    alphabet: BTreeSet<String>,
}

impl ClassicalClassModel {
    pub fn new(classes: Vec<ClassicalClass>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::EmptyModel);
        }
        check_distribution(classes.iter().map(|c| c.prior))?;
        for c in &classes {
            check_distribution(c.distribution.values().copied())?;
        }
        let alphabet = classes
            .iter()
            .flat_map(|c| c.distribution.keys().cloned())
            .collect();
        Ok(Self { classes, alphabet })
    }

    pub fn classes(&self) -> &[ClassicalClass] {
        &self.classes
    }

    pub fn alphabet(&self) -> &BTreeSet<String> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    fn probability(&self, class: usize, symbol: &str) -> f64 {
        self.classes[class].distribution.get(symbol).copied().unwrap_or(0.0)
    }
}

/// Bayes posterior `p(C_i) ∝ prior_i p_i(observed)`.
pub fn classical_classify(model: &ClassicalClassModel, observed: &str) -> Result<ClassificationResult> {
    classical_classify_all(model, [observed])
}

/// Bayes posterior after independent observations of every symbol in `observed`.
pub fn classical_classify_all<'a>(
    model: &ClassicalClassModel,
    observed: impl IntoIterator<Item = &'a str>,
) -> Result<ClassificationResult> {
    let mut logs: Vec<f64> = model.classes.iter().map(|c| log_term(1, c.prior)).collect();
    let mut any = false;
    for symbol in observed {
        if !model.alphabet.contains(symbol) {
            return Err(Error::UnknownSymbol(symbol.into()));
        }
        any = true;
        for (i, l) in logs.iter_mut().enumerate() {
            *l += log_term(1, model.probability(i, symbol));
        }
    }
    if !any {
        return Err(Error::Empty("observations"));
    }
    posterior_from_logs(logs)
}

/// Marginal of a global state on one factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedState {
    pub state: DensityOperator,
    /// The global state is not the product of this marginal with the marginal
    /// of the remaining factors, so the reduced state is an improper mixture:
    /// it does not describe an independently prepared subsystem.
    pub improper: bool,
}

/// Partial trace of `global` keeping factor `index`.
pub fn reduce_global(global: &DensityOperator, dims: &[usize], index: usize) -> Result<ReducedState> {
    if index >= dims.len() {
        return Err(Error::FactorIndex {
            index,
            factors: dims.len(),
        });
    }
    let m = global.matrix();
    let kept = partial_trace(m, dims, &[index])?;
    let rest: Vec<usize> = (0..dims.len()).filter(|&k| k != index).collect();
    let others = partial_trace(m, dims, &rest)?;

    // product of marginals in the original factor order
    let dk = dims[index];
    let inner: usize = dims[index + 1..].iter().product();
    let split = |flat: usize| {
        let digit = (flat / inner) % dk;
        let high = flat / (inner * dk);
        (digit, high * inner + flat % inner)
    };
    let n = m.rows();
    let product = ComplexMatrix::from_fn(n, n, |i, j| {
        let (ik, ir) = split(i);
        let (jk, jr) = split(j);
        kept.get(ik, jk) * others.get(ir, jr)
    });
    let improper = product.distance(m)? > PRODUCT_TOL;
    Ok(ReducedState {
        state: DensityOperator::new(kept)?,
        improper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::tensor_product;
    use crate::quantum::Effect;
    use crate::random;
    use alloc::vec;
    use num_complex::Complex64;

    const H: f64 = core::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn plus() -> DensityOperator {
        DensityOperator::pure(&[c(H), c(H)]).unwrap()
    }

    fn bell() -> DensityOperator {
        DensityOperator::pure(&[c(H), c(0.0), c(0.0), c(H)]).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn class_state_examples() {
        let zero = DensityOperator::basis(2, 0);
        let one = DensityOperator::basis(2, 1);
        let single = build_class_state(&[ClassMember { weight: 1.0, state: plus() }]).unwrap();
        assert!(single.matrix().distance(plus().matrix()).unwrap() < 1e-15);
        let even = Class::equally_weighted("c", 1.0, vec![zero.clone(), one.clone()]);
        let even = build_class_state(&even.members).unwrap();
        assert!(even.matrix().distance(DensityOperator::maximally_mixed(2).matrix()).unwrap() < 1e-15);
        let skew = build_class_state(&[
            ClassMember { weight: 0.25, state: zero },
            ClassMember { weight: 0.75, state: one },
        ])
        .unwrap();
        let expected = ComplexMatrix::from_diagonal(&[0.25, 0.75]).unwrap();
        assert!(skew.matrix().distance(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn model_validation() {
        assert_eq!(ClassModel::new(vec![]), Err(Error::EmptyModel));
        let a = Class::equally_weighted("a", 0.5, vec![DensityOperator::basis(2, 0)]);
        let b = Class::equally_weighted("b", 0.4, vec![DensityOperator::basis(2, 1)]);
        assert!(matches!(ClassModel::new(vec![a.clone(), b]), Err(Error::WeightNormalization { .. })));
        let wide = Class::equally_weighted("b", 0.5, vec![DensityOperator::basis(3, 1)]);
        assert!(matches!(ClassModel::new(vec![a, wide]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn exact_match_by_fidelity() {
        let model = ClassModel::from_states(vec![DensityOperator::basis(2, 0), DensityOperator::basis(2, 1)]).unwrap();
        let r = classify_state(&model, &DensityOperator::basis(2, 0), Metric::Fidelity).unwrap();
        assert_eq!(r.posteriors, vec![1.0, 0.0]);
        assert_eq!(r.decided, 0);
        assert_eq!(r.mode, Mode::Hard);
    }

    #[test]
    fn equidistant_input_goes_to_first_class() {
        let model = ClassModel::from_states(vec![DensityOperator::basis(2, 0), DensityOperator::basis(2, 1)]).unwrap();
        for metric in [Metric::Trace, Metric::Fidelity, Metric::HilbertSchmidt] {
            let r = classify_state(&model, &DensityOperator::maximally_mixed(2), metric).unwrap();
            assert_eq!(r.decided, 0, "{metric}");
        }
    }

    #[test]
    fn trace_metric_prefers_closer_class() {
        let model = ClassModel::from_states(vec![DensityOperator::basis(2, 0), plus()]).unwrap();
        let r = classify_state(&model, &DensityOperator::basis(2, 1), Metric::Trace).unwrap();
        assert_eq!(r.decided, 1);
        assert!((r.scores[0] - 1.0).abs() < 1e-12);
        assert!((r.scores[1] - H).abs() < 1e-12);
    }

    #[test]
    fn classify_state_errors() {
        let model = ClassModel::from_states(vec![DensityOperator::basis(2, 0)]).unwrap();
        assert!(matches!(
            classify_state(&model, &DensityOperator::basis(3, 0), Metric::Trace),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn metric_names_round_trip() {
        for m in [Metric::Trace, Metric::Fidelity, Metric::HilbertSchmidt] {
            assert_eq!(m.as_str().parse::<Metric>().unwrap(), m);
        }
        assert!("l2".parse::<Metric>().is_err());
    }

    #[test]
    fn bayes_from_counts() {
        let model = ClassModel::from_states(vec![DensityOperator::basis(2, 0), plus()]).unwrap();
        let povm = PovmMeasurement::computational_basis(2);
        let r = classify_samples(&model, &povm, &BTreeMap::from([(0, 2)])).unwrap();
        assert!(close(&r.posteriors, &[0.8, 0.2], 1e-12), "{:?}", r.posteriors);
        assert_eq!(r.decided, 0);
        assert_eq!(r.mode, Mode::Soft);

        let r = classify_samples(&model, &povm, &BTreeMap::from([(1, 1)])).unwrap();
        assert_eq!(r.posteriors, vec![0.0, 1.0]);
        assert_eq!(r.scores[0], f64::NEG_INFINITY);
    }

    #[test]
    fn single_class_posterior() {
        let model = ClassModel::from_states(vec![plus()]).unwrap();
        let povm = PovmMeasurement::computational_basis(2);
        let r = classify_samples(&model, &povm, &BTreeMap::from([(0, 3), (1, 5)])).unwrap();
        assert_eq!(r.posteriors, vec![1.0]);
    }

    #[test]
    fn all_zero_likelihood() {
        let model = ClassModel::from_states(vec![DensityOperator::basis(2, 0)]).unwrap();
        let povm = PovmMeasurement::computational_basis(2);
        assert_eq!(
            classify_samples(&model, &povm, &BTreeMap::from([(1, 1)])),
            Err(Error::AllZeroLikelihood)
        );
        assert_eq!(
            classify_samples(&model, &povm, &BTreeMap::from([(2, 1)])),
            Err(Error::UnknownOutcome { index: 2, outcomes: 2 })
        );
        assert!(classify_samples(&model, &povm, &BTreeMap::new()).is_err());
    }

    #[test]
    fn large_counts_do_not_underflow() {
        let a = DensityOperator::diagonal(&[0.6, 0.4]).unwrap();
        let b = DensityOperator::diagonal(&[0.5, 0.5]).unwrap();
        let model = ClassModel::from_states(vec![a, b]).unwrap();
        let povm = PovmMeasurement::computational_basis(2);
        let r = classify_samples(&model, &povm, &BTreeMap::from([(0, 50_000), (1, 50_000)])).unwrap();
        assert_eq!(r.decided, 1);
        assert!(r.posteriors[1] > 0.999);
    }

    #[test]
    fn soft_povm_effects() {
        let e0 = Effect::new(ComplexMatrix::from_diagonal(&[0.75, 0.25]).unwrap()).unwrap();
        let e1 = Effect::new(ComplexMatrix::from_diagonal(&[0.25, 0.75]).unwrap()).unwrap();
        let povm = PovmMeasurement::with_index_labels(vec![e0, e1]).unwrap();
        let model = ClassModel::from_states(vec![DensityOperator::basis(2, 0), DensityOperator::basis(2, 1)]).unwrap();
        let r = classify_samples(&model, &povm, &BTreeMap::from([(0, 1)])).unwrap();
        assert!(close(&r.posteriors, &[0.75, 0.25], 1e-12));
    }

    fn classical(p1: f64, p2: f64, priors: (f64, f64)) -> ClassicalClassModel {
        let dist = |p: f64| BTreeMap::from([("x".to_string(), p), ("y".to_string(), 1.0 - p)]);
        ClassicalClassModel::new(vec![
            ClassicalClass { name: "a".into(), prior: priors.0, distribution: dist(p1) },
            ClassicalClass { name: "b".into(), prior: priors.1, distribution: dist(p2) },
        ])
        .unwrap()
    }

    #[test]
    fn classical_bayes() {
        let r = classical_classify(&classical(0.9, 0.1, (0.5, 0.5)), "x").unwrap();
        assert!(close(&r.posteriors, &[0.9, 0.1], 1e-12));
        let r = classical_classify(&classical(1.0, 0.0, (0.5, 0.5)), "y").unwrap();
        assert_eq!(r.posteriors, vec![0.0, 1.0]);
        let r = classical_classify(&classical(0.3, 0.8, (1.0, 0.0)), "x").unwrap();
        assert_eq!(r.posteriors, vec![1.0, 0.0]);
    }

    #[test]
    fn classical_errors() {
        let model = classical(0.9, 0.1, (0.5, 0.5));
        assert_eq!(classical_classify(&model, "z"), Err(Error::UnknownSymbol("z".into())));
        let bad = ClassicalClassModel::new(vec![ClassicalClass {
            name: "a".into(),
            prior: 1.0,
            distribution: BTreeMap::from([("x".to_string(), 0.7)]),
        }]);
        assert!(matches!(bad, Err(Error::WeightNormalization { .. })));
    }

    #[test]
    fn sequential_observations_multiply() {
        let model = classical(0.9, 0.5, (0.5, 0.5));
        let r = classical_classify_all(&model, ["x", "x", "y"]).unwrap();
        let a = 0.9 * 0.9 * 0.1;
        let b = 0.5 * 0.5 * 0.5;
        assert!(close(&r.posteriors, &[a / (a + b), b / (a + b)], 1e-12));
    }

    #[test]
    fn feature_symbols() {
        assert_eq!(FeatureVector::new(vec![0.5, 1.0]).unwrap().symbol(), "0.5,1");
        assert!(FeatureVector::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn reduce_product_state() {
        let mut rng = random::rng(4);
        let a = DensityOperator::new(random::density_matrix(2, &mut rng)).unwrap();
        let b = DensityOperator::new(random::density_matrix(3, &mut rng)).unwrap();
        let global = a.tensor(&b);
        let r = reduce_global(&global, &[2, 3], 0).unwrap();
        assert!(r.state.matrix().distance(a.matrix()).unwrap() < 1e-12);
        assert!(!r.improper);
        let r = reduce_global(&global, &[2, 3], 1).unwrap();
        assert!(r.state.matrix().distance(b.matrix()).unwrap() < 1e-12);
        assert!(!r.improper);
    }

    #[test]
    fn reduce_bell_state() {
        for k in 0..2 {
            let r = reduce_global(&bell(), &[2, 2], k).unwrap();
            assert!(r.state.matrix().distance(DensityOperator::maximally_mixed(2).matrix()).unwrap() < 1e-15);
            assert!(r.improper);
        }
    }

    #[test]
    fn reduce_diagonal() {
        let global = DensityOperator::diagonal(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        let r = reduce_global(&global, &[2, 2], 1).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[0.4, 0.6]).unwrap();
        assert!(r.state.matrix().distance(&expected).unwrap() < 1e-15);
        // product of marginals has 0.3 * 0.4 = 0.12 at (0, 0), not 0.1
        assert!(r.improper);
        assert!(matches!(reduce_global(&global, &[2, 3], 0), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(reduce_global(&global, &[2, 2], 2), Err(Error::FactorIndex { .. })));
    }

    #[test]
    fn middle_factor_of_three() {
        let mut rng = random::rng(9);
        let parts: Vec<DensityOperator> = [2, 3, 2]
            .iter()
            .map(|&d| DensityOperator::new(random::density_matrix(d, &mut rng)).unwrap())
            .collect();
        let global = DensityOperator::new(tensor_product(&tensor_product(parts[0].matrix(), parts[1].matrix()), parts[2].matrix())).unwrap();
        let r = reduce_global(&global, &[2, 3, 2], 1).unwrap();
        assert!(r.state.matrix().distance(parts[1].matrix()).unwrap() < 1e-12);
        assert!(!r.improper);
    }
}
