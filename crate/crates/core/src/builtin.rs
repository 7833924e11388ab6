//! Named symbols, so index runs can be specified without coefficient files.
//!
//! | name | function |
//! |---|---|
//! | `circle:char:k=K` | `e^{iK theta}` |
//! | `circle:const:c=C` | `C` |
//! | `circle:mixed:k=K,c=C,s=S` | `e^{iK theta} (C + e^{iS theta})`, `S` defaults to 1 |
//! | `su2:const:c=C` | `C` |
//! | `su2:shifted-real:c=C` | `C + x1 + x3`, `C` defaults to 3 |
//! | `su2:entry:l2=L,i=I,j=J` | the matrix coefficient `xi_{IJ}` of spin `L/2` |

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::{BandlimitedFunction, DualIndex, GroupTag, SpectrumSide, TruncationSpec};
use crate::linalg::C64;

fn parse_params(s: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    if s.is_empty() {
        return Ok(out);
    }
    for part in s.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("builtin parameter `{part}` is not key=value")))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(Error::Parse(format!("duplicate builtin parameter `{k}`")));
        }
    }
    Ok(out)
}

struct Params {
    name: String,
    map: BTreeMap<String, String>,
}

impl Params {
    fn take<T: std::str::FromStr>(&mut self, key: &str, default: Option<T>) -> Result<T> {
        match self.map.remove(key) {
            Some(v) => v
                .parse()
                .map_err(|_| Error::Parse(format!("{}: bad value `{v}` for `{key}`", self.name))),
            None => default.ok_or_else(|| Error::Parse(format!("{}: missing parameter `{key}`", self.name))),
        }
    }

    fn finish(self) -> Result<()> {
        if let Some(k) = self.map.keys().next() {
            return Err(Error::Parse(format!("{}: unknown parameter `{k}`", self.name)));
        }
        Ok(())
    }
}

fn circle_from_terms(terms: &[(i32, C64)]) -> BandlimitedFunction {
    let b = terms.iter().map(|(n, _)| n.unsigned_abs()).max().unwrap_or(0);
    let mut s = SpectrumSide::zeros(TruncationSpec::circle(b));
    for (n, c) in terms {
        let d = DualIndex::circle(*n);
        let old = s.block(&d).unwrap()[(0, 0)];
        s.set_entry(&d, 0, 0, old + c).unwrap();
    }
    BandlimitedFunction::new(s)
}

/// Resolves a builtin name such as `circle:char:k=1`.
pub fn builtin_symbol(spec: &str) -> Result<BandlimitedFunction> {
    let mut parts = spec.splitn(3, ':');
    let group: GroupTag = parts.next().unwrap_or("").parse()?;
    let kind = parts
        .next()
        .ok_or_else(|| Error::Parse(format!("builtin `{spec}` has no kind")))?;
    let mut p = Params {
        name: spec.to_string(),
        map: parse_params(parts.next().unwrap_or(""))?,
    };
    let f = match (group, kind) {
        (GroupTag::Circle, "char") => {
            let k: i32 = p.take("k", None)?;
            circle_from_terms(&[(k, C64::new(1.0, 0.0))])
        }
        (GroupTag::Circle, "const") => {
            let c: f64 = p.take("c", None)?;
            BandlimitedFunction::constant(group, C64::new(c, 0.0))
        }
        (GroupTag::Circle, "mixed") => {
            let k: i32 = p.take("k", None)?;
            let c: f64 = p.take("c", None)?;
            let s: i32 = p.take("s", Some(1))?;
            circle_from_terms(&[(k, C64::new(c, 0.0)), (k + s, C64::new(1.0, 0.0))])
        }
        (GroupTag::Su2, "const") => {
            let c: f64 = p.take("c", None)?;
            BandlimitedFunction::constant(group, C64::new(c, 0.0))
        }
        (GroupTag::Su2, "shifted-real") => {
            let c: f64 = p.take("c", Some(3.0))?;
            let mut s = SpectrumSide::zeros(TruncationSpec::su2(1));
            s.set_entry(&DualIndex::su2(0), 0, 0, C64::new(c, 0.0))?;
            // x1 = (xi_00 + xi_11) / 2 and x3 = (xi_01 - xi_10) / 2, with xi_ij <-> E_ji / 2
            let h = DualIndex::su2(1);
            s.set_entry(&h, 0, 0, C64::new(0.25, 0.0))?;
            s.set_entry(&h, 1, 1, C64::new(0.25, 0.0))?;
            s.set_entry(&h, 0, 1, C64::new(-0.25, 0.0))?;
            s.set_entry(&h, 1, 0, C64::new(0.25, 0.0))?;
            BandlimitedFunction::new(s)
        }
        (GroupTag::Su2, "entry") => {
            let l2: u32 = p.take("l2", None)?;
            let i: usize = p.take("i", None)?;
            let j: usize = p.take("j", None)?;
            if i > l2 as usize || j > l2 as usize {
                return Err(Error::Parse(format!("{spec}: indices exceed 2l = {l2}")));
            }
            let mut s = SpectrumSide::zeros(TruncationSpec::su2(l2));
            s.set_entry(&DualIndex::su2(l2), j, i, C64::new(1.0 / (l2 + 1) as f64, 0.0))?;
            BandlimitedFunction::new(s)
        }
        _ => return Err(Error::Parse(format!("unknown builtin symbol `{spec}`"))),
    };
    p.finish()?;
    Ok(f)
}
