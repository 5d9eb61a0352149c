//! The on-disk model format and its mapping onto solver problems.
//!
//! Models are JSON documents with an explicit `format_version`. One file
//! describes exactly one of the three planning families (`gaussian`, `lp`,
//! `gplp`); variables and constraint rows are named, units are free-form
//! labels that reports carry through without interpretation.

use std::fmt;
use std::path::Path;

use gaussplan::linalg::Matrix;
use gaussplan::lp::{LpProblem, RowSense, Sense};
use gaussplan::value::{GaussianComponent, SetComponent, ValueModel};
use gaussplan::{GplpProblem, GpProblem, UniformComponent};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Gaussian,
    Lp,
    Gplp,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Gaussian => write!(f, "gaussian"),
            ModelKind::Lp => write!(f, "lp"),
            ModelKind::Gplp => write!(f, "gplp"),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDecl {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintRow {
    pub resource: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    pub coefficients: Vec<f64>,
    pub rhs: f64,
    /// Row direction, `<=` unless stated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sense: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndependentDecl {
    pub variable: String,
    pub m: f64,
    pub sigma: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDecl {
    pub variables: Vec<String>,
    pub mean: Vec<f64>,
    /// Diagonal shorthand: per-member standard deviations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<f64>>,
    /// Full covariance matrix; exclusive with `sigma`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covariance: Option<Vec<Vec<f64>>>,
    pub lambda: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentsDecl {
    #[serde(default)]
    pub independent: Vec<IndependentDecl>,
    #[serde(default)]
    pub sets: Vec<SetDecl>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveDecl {
    pub sense: String,
    pub coefficients: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RampDecl {
    pub variable: String,
    pub a: f64,
    pub b: f64,
    pub mass: f64,
}

/// One planning model as stored on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub format_version: String,
    pub kind: ModelKind,
    pub variables: Vec<VariableDecl>,
    pub constraints: Vec<ConstraintRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<ComponentsDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<ObjectiveDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ramps: Option<Vec<RampDecl>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub currency: Option<String>,
}

/// A loaded, fully validated problem.
pub enum LoadedProblem {
    Gaussian(GpProblem),
    Lp(LpProblem),
    Gplp(GplpProblem),
}

impl ModelFile {
    pub fn load(path: &Path) -> anyhow::Result<ModelFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
        let file: ModelFile = serde_json::from_str(&text)
            .map_err(|e| anyhow::anyhow!("{}: parse error: {e}", path.display()))?;
        if file.format_version != FORMAT_VERSION {
            anyhow::bail!(
                "{}: unsupported format_version {:?} (expected {FORMAT_VERSION:?})",
                path.display(),
                file.format_version
            );
        }
        Ok(file)
    }

    pub fn save(&self, path: &Path) -> anyhow::Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n")
            .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?;
        Ok(())
    }

    pub fn variable_names(&self) -> Vec<String> {
        self.variables.iter().map(|v| v.name.clone()).collect()
    }

    pub fn resource_names(&self) -> Vec<String> {
        self.constraints.iter().map(|c| c.resource.clone()).collect()
    }

    fn variable_index(&self, name: &str) -> anyhow::Result<usize> {
        self.variables
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| anyhow::anyhow!("unknown variable {name:?}"))
    }

    fn constraint_data(&self) -> anyhow::Result<(Matrix, Vec<f64>, Vec<RowSense>)> {
        let n = self.variables.len();
        if n == 0 {
            anyhow::bail!("model declares no variables");
        }
        let mut rows = Vec::with_capacity(self.constraints.len());
        let mut rhs = Vec::with_capacity(self.constraints.len());
        let mut senses = Vec::with_capacity(self.constraints.len());
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coefficients.len() != n {
                anyhow::bail!(
                    "constraint {i} ({}): {} coefficients for {n} variables",
                    c.resource,
                    c.coefficients.len()
                );
            }
            rows.push(c.coefficients.clone());
            rhs.push(c.rhs);
            senses.push(match c.sense.as_deref() {
                None | Some("<=") => RowSense::Le,
                Some(">=") => RowSense::Ge,
                Some(other) => anyhow::bail!(
                    "constraint {i} ({}): unknown sense {other:?} (use \"<=\" or \">=\")",
                    c.resource
                ),
            });
        }
        let matrix = Matrix::from_rows(&rows)
            .map_err(|e| anyhow::anyhow!("constraint matrix: {e}"))?;
        Ok((matrix, rhs, senses))
    }

    /// Validate and convert into the matching solver problem.
    pub fn to_problem(&self) -> anyhow::Result<LoadedProblem> {
        let (matrix, rhs, senses) = self.constraint_data()?;
        match self.kind {
            ModelKind::Gaussian => {
                if self.objective.is_some() || self.ramps.is_some() {
                    anyhow::bail!("gaussian models carry components, not objective/ramps");
                }
                if senses.iter().any(|s| *s != RowSense::Le) {
                    anyhow::bail!("gaussian models only support \"<=\" resource rows");
                }
                let comps = self
                    .components
                    .as_ref()
                    .ok_or_else(|| anyhow::anyhow!("gaussian model missing \"components\""))?;
                let mut independents = Vec::with_capacity(comps.independent.len());
                for (i, d) in comps.independent.iter().enumerate() {
                    let idx = self
                        .variable_index(&d.variable)
                        .map_err(|e| anyhow::anyhow!("independent component {i}: {e}"))?;
                    independents.push(
                        GaussianComponent::new(idx, d.m, d.sigma, d.lambda).map_err(|e| {
                            anyhow::anyhow!("independent component {i} ({}): {e}", d.variable)
                        })?,
                    );
                }
                let mut sets = Vec::with_capacity(comps.sets.len());
                for (i, d) in comps.sets.iter().enumerate() {
                    let context = |e: anyhow::Error| anyhow::anyhow!("set {i}: {e}");
                    let indices: Vec<usize> = d
                        .variables
                        .iter()
                        .map(|name| self.variable_index(name))
                        .collect::<anyhow::Result<_>>()
                        .map_err(context)?;
                    let k = indices.len();
                    let cov = match (&d.sigma, &d.covariance) {
                        (Some(_), Some(_)) => {
                            anyhow::bail!("set {i}: give either \"sigma\" or \"covariance\", not both")
                        }
                        (None, None) => {
                            anyhow::bail!("set {i}: missing \"sigma\" or \"covariance\"")
                        }
                        (Some(sigmas), None) => {
                            if sigmas.len() != k {
                                anyhow::bail!(
                                    "set {i}: {} sigma entries for {k} members",
                                    sigmas.len()
                                );
                            }
                            let mut cov = Matrix::zeros(k, k);
                            for (j, s) in sigmas.iter().enumerate() {
                                cov.set(j, j, s * s);
                            }
                            cov
                        }
                        (None, Some(rows)) => Matrix::from_rows(rows)
                            .map_err(|e| anyhow::anyhow!("set {i}: covariance: {e}"))?,
                    };
                    sets.push(
                        SetComponent::new(indices, d.mean.clone(), cov, d.lambda)
                            .map_err(|e| anyhow::anyhow!("set {i}: {e}"))?,
                    );
                }
                let model = ValueModel::new(self.variables.len(), independents, sets)
                    .map_err(|e| anyhow::anyhow!("value model: {e}"))?;
                let problem = GpProblem::new(model, matrix, rhs)
                    .map_err(|e| anyhow::anyhow!("planning problem: {e}"))?;
                Ok(LoadedProblem::Gaussian(problem))
            }
            ModelKind::Lp => {
                if self.components.is_some() || self.ramps.is_some() {
                    anyhow::bail!("lp models carry an objective, not components/ramps");
                }
                let obj = self
                    .objective
                    .as_ref()
                    .ok_or_else(|| anyhow::anyhow!("lp model missing \"objective\""))?;
                let sense = match obj.sense.as_str() {
                    "maximize" => Sense::Maximize,
                    "minimize" => Sense::Minimize,
                    other => anyhow::bail!("objective sense {other:?} (use \"maximize\" or \"minimize\")"),
                };
                if obj.coefficients.len() != self.variables.len() {
                    anyhow::bail!(
                        "objective has {} coefficients for {} variables",
                        obj.coefficients.len(),
                        self.variables.len()
                    );
                }
                let problem = LpProblem::new(obj.coefficients.clone(), sense, matrix, rhs, senses)
                    .map_err(|e| anyhow::anyhow!("lp problem: {e}"))?;
                Ok(LoadedProblem::Lp(problem))
            }
            ModelKind::Gplp => {
                if self.components.is_some() || self.objective.is_some() {
                    anyhow::bail!("gplp models carry ramps, not components/objective");
                }
                if senses.iter().any(|s| *s != RowSense::Le) {
                    anyhow::bail!("gplp models only support \"<=\" resource rows");
                }
                let ramps = self
                    .ramps
                    .as_ref()
                    .ok_or_else(|| anyhow::anyhow!("gplp model missing \"ramps\""))?;
                let mut components = Vec::with_capacity(ramps.len());
                for (i, d) in ramps.iter().enumerate() {
                    let idx = self
                        .variable_index(&d.variable)
                        .map_err(|e| anyhow::anyhow!("ramp {i}: {e}"))?;
                    components.push(
                        UniformComponent::new(idx, d.a, d.b, d.mass)
                            .map_err(|e| anyhow::anyhow!("ramp {i} ({}): {e}", d.variable))?,
                    );
                }
                let problem = GplpProblem::new(components, matrix, rhs)
                    .map_err(|e| anyhow::anyhow!("gplp problem: {e}"))?;
                Ok(LoadedProblem::Gplp(problem))
            }
        }
    }
}

/// Rebuild a gaussian model file from a solved conversion.
pub fn gaussian_model_file(
    gp: &GpProblem,
    variables: Vec<VariableDecl>,
    constraints: Vec<ConstraintRow>,
    currency: Option<String>,
) -> ModelFile {
    let mut independent: Vec<IndependentDecl> = gp
        .model()
        .independents()
        .iter()
        .map(|c| IndependentDecl {
            variable: variables[c.variable_index()].name.clone(),
            m: c.m(),
            sigma: c.sigma(),
            lambda: c.lambda(),
        })
        .collect();
    independent.sort_by(|a, b| a.variable.cmp(&b.variable));
    let sets: Vec<SetDecl> = gp
        .model()
        .sets()
        .iter()
        .map(|s| SetDecl {
            variables: s
                .variable_indices()
                .iter()
                .map(|&i| variables[i].name.clone())
                .collect(),
            mean: s.mean().to_vec(),
            sigma: s.is_diagonal().then(|| s.sigmas().to_vec()),
            covariance: (!s.is_diagonal()).then(|| {
                (0..s.members())
                    .map(|i| (0..s.members()).map(|j| s.covariance().get(i, j)).collect())
                    .collect()
            }),
            lambda: s.lambda(),
        })
        .collect();
    ModelFile {
        format_version: FORMAT_VERSION.into(),
        kind: ModelKind::Gaussian,
        variables,
        constraints,
        components: Some(ComponentsDecl { independent, sets }),
        objective: None,
        ramps: None,
        currency,
    }
}

/// Rebuild a gplp model file from a solved conversion.
pub fn gplp_model_file(
    gplp: &GplpProblem,
    variables: Vec<VariableDecl>,
    constraints: Vec<ConstraintRow>,
    currency: Option<String>,
) -> ModelFile {
    let ramps: Vec<RampDecl> = gplp
        .components()
        .iter()
        .map(|c| RampDecl {
            variable: variables[c.variable_index()].name.clone(),
            a: c.a(),
            b: c.b(),
            mass: c.mass(),
        })
        .collect();
    ModelFile {
        format_version: FORMAT_VERSION.into(),
        kind: ModelKind::Gplp,
        variables,
        constraints,
        components: None,
        objective: None,
        ramps: Some(ramps),
        currency,
    }
}
