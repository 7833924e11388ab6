//! Run configuration for `index` and `fourier`, read from JSON.
//!
//! ```json
//! {
//!   "group": "circle",
//!   "symbol": { "builtin": "circle:char:k=1" },
//!   "projection": "hardy",
//!   "bandwidth": 32,
//!   "methods": ["winding", "connes", "svd"],
//!   "m": [1, 3],
//!   "trace_route": "both"
//! }
//! ```
//!
//! `bandwidth` is in natural units: the largest `|n|` on the circle, the
//! largest spin on SU(2) (half-integers allowed). Everything is validated
//! before any computation is started.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::builtin::builtin_symbol;
use crate::error::{Error, Result};
use crate::group::{BandlimitedFunction, GroupTag, TruncationSpec};
use crate::index::{default_commutator_count, IndexOptions, Method, TraceRoute};
use crate::operator::MultiplierProjection;
use crate::peter_weyl::DELTA_INV;

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SymbolSource {
    Builtin(String),
    /// Inline coefficient JSON in the [`BandlimitedFunction`] format.
    Coefficients(serde_json::Value),
    /// Path to a coefficient file, relative to the config file.
    File(PathBuf),
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ProjectionSource {
    /// `hardy`, `su2-sign` or `identity`.
    Pattern(String),
    Custom { blocks: serde_json::Value },
}

impl Default for ProjectionSource {
    fn default() -> Self {
        ProjectionSource::Pattern("hardy".into())
    }
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum MethodName {
    Winding,
    Connes,
    Svd,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum RouteChoice {
    Direct,
    ViaSymbol,
    #[default]
    Both,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default = "default_report")]
    pub report: String,
    #[serde(default = "default_csv")]
    pub csv: String,
    #[serde(default = "default_sv")]
    pub singular_values: String,
    #[serde(default = "default_spectrum")]
    pub spectrum: String,
}

fn default_report() -> String {
    "report.json".into()
}
fn default_csv() -> String {
    "report.csv".into()
}
fn default_sv() -> String {
    "singular_values.csv".into()
}
fn default_spectrum() -> String {
    "spectrum.json".into()
}

impl Default for Outputs {
    fn default() -> Self {
        Outputs {
            report: default_report(),
            csv: default_csv(),
            singular_values: default_sv(),
            spectrum: default_spectrum(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub group: GroupTag,
    pub symbol: SymbolSource,
    #[serde(default)]
    pub projection: ProjectionSource,
    pub bandwidth: f64,
    #[serde(default)]
    pub methods: Option<Vec<MethodName>>,
    /// Commutator counts for the Connes method; defaults to `1` and the group default.
    #[serde(default)]
    pub m: Option<Vec<usize>>,
    #[serde(default)]
    pub trace_route: RouteChoice,
    #[serde(default)]
    pub tau_rel: Option<f64>,
    /// Edge band width in label units.
    #[serde(default)]
    pub edge_width: Option<u32>,
    #[serde(default)]
    pub delta_inv: Option<f64>,
    /// Bandwidth of the approximate inverse, in label units.
    #[serde(default)]
    pub inverse_bandwidth: Option<u32>,
    #[serde(default)]
    pub outputs: Outputs,
}

/// A config after validation, with the symbol and projection resolved.
#[derive(Clone, Debug)]
pub struct ResolvedRun {
    pub symbol_name: String,
    pub symbol: BandlimitedFunction,
    pub trunc: TruncationSpec,
    pub projection: MultiplierProjection,
    pub methods: Vec<Method>,
    pub options: IndexOptions,
    pub outputs: Outputs,
}

/// Truncation for a bandwidth in natural units: `|n|` on the circle, spin on SU(2).
pub fn natural_truncation(group: GroupTag, b: f64) -> Result<TruncationSpec> {
    if !b.is_finite() || b < 0.0 {
        return Err(Error::InvalidTruncation(format!("bandwidth {b} must be a nonnegative number")));
    }
    match group {
        GroupTag::Circle => {
            if b.fract() != 0.0 {
                return Err(Error::InvalidTruncation(format!("circle bandwidth {b} is not an integer")));
            }
            Ok(TruncationSpec::circle(b as u32))
        }
        GroupTag::Su2 => {
            if (2.0 * b).fract() != 0.0 {
                return Err(Error::InvalidTruncation(format!("su2 bandwidth {b} is not a half-integer")));
            }
            Ok(TruncationSpec::su2((2.0 * b) as u32))
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn truncation(&self) -> Result<TruncationSpec> {
        natural_truncation(self.group, self.bandwidth)
    }

    /// Loads the symbol; `base` resolves relative `file` paths.
    pub fn load_symbol(&self, base: Option<&Path>) -> Result<(String, BandlimitedFunction)> {
        let (name, f) = match &self.symbol {
            SymbolSource::Builtin(s) => (s.clone(), builtin_symbol(s)?),
            SymbolSource::Coefficients(v) => ("inline".to_string(), BandlimitedFunction::from_json(&v.to_string())?),
            SymbolSource::File(p) => {
                let path = match base {
                    Some(b) if p.is_relative() => b.join(p),
                    _ => p.clone(),
                };
                let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                (p.display().to_string(), BandlimitedFunction::from_json(&text)?)
            }
        };
        if f.group() != self.group {
            return Err(Error::GroupMismatch {
                expected: self.group,
                found: f.group(),
            });
        }
        Ok((name, f))
    }

    fn method_list(&self) -> Result<Vec<Method>> {
        let names = self
            .methods
            .clone()
            .unwrap_or_else(|| match self.group {
                GroupTag::Circle => vec![MethodName::Winding, MethodName::Connes, MethodName::Svd],
                GroupTag::Su2 => vec![MethodName::Connes, MethodName::Svd],
            });
        if names.is_empty() {
            return Err(Error::InvalidParameter("method list is empty".into()));
        }
        let ms = match &self.m {
            Some(ms) => ms.clone(),
            None => {
                let mut v = vec![1, default_commutator_count(self.group)];
                v.dedup();
                v
            }
        };
        if let Some(bad) = ms.iter().find(|m| **m == 0 || **m % 2 == 0) {
            return Err(Error::EvenFactorCount(*bad));
        }
        let routes: &[TraceRoute] = match self.trace_route {
            RouteChoice::Direct => &[TraceRoute::Direct],
            RouteChoice::ViaSymbol => &[TraceRoute::ViaSymbol],
            RouteChoice::Both => &[TraceRoute::Direct, TraceRoute::ViaSymbol],
        };
        let mut out = Vec::new();
        for name in names {
            match name {
                MethodName::Winding => {
                    if self.group != GroupTag::Circle {
                        return Err(Error::InvalidParameter("the winding method is only defined on the circle".into()));
                    }
                    out.push(Method::Winding);
                }
                MethodName::Connes => {
                    for m in &ms {
                        for route in routes {
                            out.push(Method::Connes { m: *m, route: *route });
                        }
                    }
                }
                MethodName::Svd => out.push(Method::Svd),
            }
        }
        Ok(out)
    }

    fn options(&self) -> Result<IndexOptions> {
        let tau = self.tau_rel.unwrap_or(crate::operator::TAU_REL);
        if !(tau > 0.0 && tau < 1.0) {
            return Err(Error::InvalidParameter(format!("tau_rel {tau} outside (0, 1)")));
        }
        let delta = self.delta_inv.unwrap_or(DELTA_INV);
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidParameter(format!("delta_inv {delta} must be positive")));
        }
        Ok(IndexOptions {
            delta_inv: delta,
            tau_rel: tau,
            edge_width: self.edge_width,
            inverse_bound: self.inverse_bandwidth,
        })
    }

    fn check_outputs(&self) -> Result<()> {
        let o = &self.outputs;
        let names = [&o.report, &o.csv, &o.singular_values, &o.spectrum];
        for n in names {
            let p = Path::new(n);
            if n.is_empty() || p.is_absolute() || p.components().count() != 1 {
                return Err(Error::InvalidParameter(format!("output name `{n}` must be a plain file name")));
            }
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::InvalidParameter(format!("output name `{a}` used twice")));
            }
        }
        Ok(())
    }

    /// Validates every field and resolves the symbol and projection.
    pub fn resolve(&self, base: Option<&Path>) -> Result<ResolvedRun> {
        let trunc = self.truncation()?;
        let methods = self.method_list()?;
        let options = self.options()?;
        self.check_outputs()?;
        let (symbol_name, symbol) = self.load_symbol(base)?;
        let projection = match &self.projection {
            ProjectionSource::Pattern(name) => MultiplierProjection::from_pattern(name, trunc)?,
            ProjectionSource::Custom { blocks } => MultiplierProjection::from_json_blocks(trunc, blocks)?,
        };
        Ok(ResolvedRun {
            symbol_name,
            symbol,
            trunc,
            projection,
            methods,
            options,
            outputs: self.outputs.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config() {
        let c = RunConfig::from_json(r#"{"group":"circle","symbol":{"builtin":"circle:char:k=1"},"bandwidth":32}"#).unwrap();
        let r = c.resolve(None).unwrap();
        assert_eq!(r.trunc, TruncationSpec::circle(32));
        // winding, connes m=1 and m=3 on both routes, svd
        assert_eq!(r.methods.len(), 6);
        assert_eq!(r.outputs, Outputs::default());
    }

    #[test]
    fn su2_bandwidth_is_a_spin() {
        let c = RunConfig::from_json(
            r#"{"group":"su2","symbol":{"builtin":"su2:shifted-real"},"bandwidth":2.5,"methods":["connes","svd"],"m":[5]}"#,
        )
        .unwrap();
        let r = c.resolve(None).unwrap();
        assert_eq!(r.trunc, TruncationSpec::su2(5));
        assert_eq!(r.methods.len(), 3);
    }

    #[test]
    fn rejections() {
        for bad in [
            r#"{"group":"circle","symbol":{"builtin":"circle:char:k=1"},"bandwidth":32,"colour":1}"#,
            r#"{"group":"circle","symbol":{"builtin":"circle:char:k=1"}}"#,
            r#"{"group":"circle","symbol":{"url":"x"},"bandwidth":3}"#,
            r#"{"group":"circle","symbol":{"builtin":"circle:char:k=1"},"bandwidth":3,"outputs":{"report":"a","extra":"b"}}"#,
        ] {
            assert!(RunConfig::from_json(bad).is_err(), "{bad}");
        }
        for bad in [
            r#"{"group":"circle","symbol":{"builtin":"circle:char:k=1"},"bandwidth":2.5}"#,
            r#"{"group":"su2","symbol":{"builtin":"su2:shifted-real"},"bandwidth":1.25}"#,
            r#"{"group":"su2","symbol":{"builtin":"su2:shifted-real"},"bandwidth":2,"methods":["winding"]}"#,
            r#"{"group":"circle","symbol":{"builtin":"su2:shifted-real"},"bandwidth":2}"#,
            r#"{"group":"circle","symbol":{"builtin":"circle:char:k=1"},"bandwidth":8,"m":[2]}"#,
            r#"{"group":"circle","symbol":{"builtin":"circle:char:k=1"},"bandwidth":8,"projection":"nope"}"#,
            r#"{"group":"circle","symbol":{"builtin":"circle:char:k=1"},"bandwidth":8,"outputs":{"report":"../r.json"}}"#,
            r#"{"group":"circle","symbol":{"builtin":"circle:char:k=1"},"bandwidth":8,"tau_rel":0}"#,
        ] {
            let c = RunConfig::from_json(bad).unwrap();
            assert!(c.resolve(None).is_err(), "{bad}");
        }
    }
}
