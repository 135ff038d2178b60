//! JSON file formats. Every matrix is `{"rows", "cols", "entries"}` with
//! row-major `[re, im]` pairs.

use std::collections::BTreeMap;

use nkpr_core::learning::{ChannelSpec, LearningScenario, LearningStep};
use nkpr_core::quantum::{DensityOperator, Effect, PovmMeasurement};
use nkpr_core::recognition::{Class, ClassMember, ClassModel};
use nkpr_core::{Complex64, ComplexMatrix, Error};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<ComplexMatrix, Error> {
        let entries = self.entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        ComplexMatrix::new(self.rows, self.cols, entries)
    }
}

impl From<&ComplexMatrix> for MatrixFile {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityFile {
    pub dim: usize,
    pub matrix: MatrixFile,
}

impl DensityFile {
    pub fn to_state(&self) -> Result<DensityOperator, Error> {
        let m = self.matrix.to_matrix()?;
        if m.rows() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.rows(),
            });
        }
        DensityOperator::new(m)
    }
}

impl From<&DensityOperator> for DensityFile {
    fn from(rho: &DensityOperator) -> Self {
        Self {
            dim: rho.dim(),
            matrix: rho.matrix().into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PovmFile {
    pub effects: Vec<MatrixFile>,
    /// Outcome indices as labels when absent.
    #[serde(default)]
    pub labels: Option<Vec<String>>,
}

impl PovmFile {
    pub fn to_povm(&self) -> Result<PovmMeasurement, Error> {
        let effects = self
            .effects
            .iter()
            .map(|m| Effect::new(m.to_matrix()?))
            .collect::<Result<Vec<_>, _>>()?;
        match &self.labels {
            Some(labels) => PovmMeasurement::new(effects, labels.clone()),
            None => PovmMeasurement::with_index_labels(effects),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberFile {
    pub weight: f64,
    pub state: DensityFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassFile {
    pub name: String,
    pub prior: f64,
    pub members: Vec<MemberFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub dim: usize,
    pub classes: Vec<ClassFile>,
}

impl ModelFile {
    pub fn to_model(&self) -> Result<ClassModel, Error> {
        let mut classes = Vec::with_capacity(self.classes.len());
        for c in &self.classes {
            let mut members = Vec::with_capacity(c.members.len());
            for m in &c.members {
                let state = m.state.to_state()?;
                if state.dim() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: state.dim(),
                    });
                }
                members.push(ClassMember { weight: m.weight, state });
            }
            classes.push(Class {
                name: c.name.clone(),
                prior: c.prior,
                members,
            });
        }
        ClassModel::new(classes)
    }
}

/// Outcome label to number of occurrences.
pub type CountsFile = BTreeMap<String, u64>;

/// Maps labelled counts onto outcome indices of `povm`.
pub fn counts_to_indices(counts: &CountsFile, povm: &PovmMeasurement) -> Result<BTreeMap<usize, u64>, Error> {
    let mut out = BTreeMap::new();
    for (label, &n) in counts {
        let k = povm.label_index(label).ok_or_else(|| Error::UnknownSymbol(label.clone()))?;
        *out.entry(k).or_insert(0) += n;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelFile {
    pub name: String,
    #[serde(default)]
    pub params: serde_json::Map<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepFile {
    pub time: f64,
    pub channel: ChannelFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub initial: DensityFile,
    pub steps: Vec<StepFile>,
}

impl ScenarioFile {
    pub fn to_scenario(&self) -> Result<LearningScenario, Error> {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                Ok(LearningStep {
                    time: s.time,
                    channel: s.channel.to_spec()?,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        LearningScenario::new(self.initial.to_state()?, steps)
    }
}

fn param<'a>(params: &'a serde_json::Map<String, Value>, name: &'static str) -> Result<&'a Value, Error> {
    params.get(name).ok_or(Error::InvalidParameter {
        name,
        reason: "missing".into(),
    })
}

fn number(params: &serde_json::Map<String, Value>, name: &'static str) -> Result<f64, Error> {
    param(params, name)?.as_f64().ok_or(Error::InvalidParameter {
        name,
        reason: "expected a number".into(),
    })
}

fn typed<T: serde::de::DeserializeOwned>(value: &Value, name: &'static str) -> Result<T, Error> {
    T::deserialize(value).map_err(|e| Error::InvalidParameter {
        name,
        reason: e.to_string(),
    })
}

impl ChannelFile {
    /// Channel names: `identity`, `unitary {matrix}`, `depolarizing {p}`,
    /// `bit-flip {p}`, `phase-flip {p}`, `amplitude-damping {gamma}`,
    /// `measurement-dephasing {basis?}`, `kraus {operators}` and
    /// `on-factor {dims, index, channel}`.
    pub fn to_spec(&self) -> Result<ChannelSpec, Error> {
        let p = &self.params;
        Ok(match self.name.as_str() {
            "identity" => ChannelSpec::Identity,
            "unitary" => ChannelSpec::Unitary(typed::<MatrixFile>(param(p, "matrix")?, "matrix")?.to_matrix()?),
            "depolarizing" => ChannelSpec::Depolarizing { p: number(p, "p")? },
            "bit-flip" => ChannelSpec::BitFlip { p: number(p, "p")? },
            "phase-flip" => ChannelSpec::PhaseFlip { p: number(p, "p")? },
            "amplitude-damping" => ChannelSpec::AmplitudeDamping {
                gamma: number(p, "gamma")?,
            },
            "measurement-dephasing" => ChannelSpec::MeasurementDephasing {
                basis: match p.get("basis") {
                    None | Some(Value::Null) => None,
                    Some(v) => Some(typed::<MatrixFile>(v, "basis")?.to_matrix()?),
                },
            },
            "kraus" => ChannelSpec::Kraus(
                typed::<Vec<MatrixFile>>(param(p, "operators")?, "operators")?
                    .iter()
                    .map(MatrixFile::to_matrix)
                    .collect::<Result<_, _>>()?,
            ),
            "on-factor" => ChannelSpec::OnFactor {
                dims: typed(param(p, "dims")?, "dims")?,
                index: typed(param(p, "index")?, "index")?,
                channel: Box::new(typed::<ChannelFile>(param(p, "channel")?, "channel")?.to_spec()?),
            },
            other => return Err(Error::UnknownChannel(other.into())),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn matrix_round_trip() {
        let m = ComplexMatrix::new(1, 2, vec![Complex64::new(1.0, -2.0), Complex64::new(0.5, 0.0)]).unwrap();
        let file = MatrixFile::from(&m);
        let text = serde_json::to_string(&file).unwrap();
        assert_eq!(text, r#"{"rows":1,"cols":2,"entries":[[1.0,-2.0],[0.5,0.0]]}"#);
        let back: MatrixFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
    }

    #[test]
    fn shape_errors_are_domain_errors() {
        let file = MatrixFile {
            rows: 2,
            cols: 2,
            entries: vec![[1.0, 0.0]],
        };
        assert!(matches!(file.to_matrix(), Err(Error::Shape { .. })));
        let density = DensityFile {
            dim: 3,
            matrix: (&ComplexMatrix::identity(2).scale_real(0.5)).into(),
        };
        assert!(matches!(density.to_state(), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn channel_names() {
        let parse = |v: Value| serde_json::from_value::<ChannelFile>(v).unwrap().to_spec();
        assert_eq!(parse(json!({"name": "identity"})).unwrap(), ChannelSpec::Identity);
        assert_eq!(
            parse(json!({"name": "amplitude-damping", "params": {"gamma": 0.25}})).unwrap(),
            ChannelSpec::AmplitudeDamping { gamma: 0.25 }
        );
        assert_eq!(
            parse(json!({"name": "measurement-dephasing"})).unwrap(),
            ChannelSpec::MeasurementDephasing { basis: None }
        );
        let local = parse(json!({
            "name": "on-factor",
            "params": {"dims": [2, 2], "index": 1, "channel": {"name": "bit-flip", "params": {"p": 0.1}}}
        }))
        .unwrap();
        assert_eq!(
            local,
            ChannelSpec::OnFactor {
                dims: vec![2, 2],
                index: 1,
                channel: Box::new(ChannelSpec::BitFlip { p: 0.1 })
            }
        );
        assert_eq!(parse(json!({"name": "teleport"})), Err(Error::UnknownChannel("teleport".into())));
        assert!(matches!(
            parse(json!({"name": "depolarizing", "params": {}})),
            Err(Error::InvalidParameter { name: "p", .. })
        ));
    }

    #[test]
    fn counts_by_label() {
        let povm = PovmMeasurement::computational_basis(2);
        let counts: CountsFile = [("0".to_string(), 3), ("1".to_string(), 4)].into();
        assert_eq!(counts_to_indices(&counts, &povm).unwrap(), [(0, 3), (1, 4)].into());
        let bad: CountsFile = [("2".to_string(), 1)].into();
        assert_eq!(counts_to_indices(&bad, &povm), Err(Error::UnknownSymbol("2".into())));
    }
}
