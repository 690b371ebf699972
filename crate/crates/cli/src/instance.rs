//! JSON instance files. Complex numbers are `[re, im]` arrays.
//!
//! ```json
//! {"signal": [[1, 0], [-2, 0]]}
//! {"pairing": {"scale": [-2, 0], "pairs": [[[2, 0], [0.5, 0]]]}, "anchor": [1, 0]}
//! {"pp": [2, 3, 6]}
//! ```

use std::fs;
use std::path::Path;

use fprlab_core::{Complex64, ComplexSignal, PPInstance, ZeroPairing};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expected a {expected} instance, found {found}")]
    KindMismatch { expected: &'static str, found: &'static str },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PairingFile {
    pub scale: [f64; 2],
    pub pairs: Vec<[[f64; 2]; 2]>,
}

/// On-disk form; exactly one of `signal`, `pairing` and `pp` is set.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signal: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<PairingFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pp: Option<Vec<u64>>,
}

/// A validated instance.
#[derive(Debug, Clone)]
pub enum Instance {
    Signal(ComplexSignal),
    Pairing { pairing: ZeroPairing, anchor: Option<Complex64> },
    Pp(PPInstance),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Signal(_) => "signal",
            Instance::Pairing { .. } => "pairing",
            Instance::Pp(_) => "pp",
        }
    }

    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| InstanceError::Parse(e.to_string()))?;
        file.validate()
    }

    pub fn load(path: &Path) -> Result<Self, InstanceError> {
        let text =
            fs::read_to_string(path).map_err(|source| InstanceError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn mismatch(&self, expected: &'static str) -> InstanceError {
        InstanceError::KindMismatch { expected, found: self.kind() }
    }
}

fn complex(v: [f64; 2]) -> Result<Complex64, InstanceError> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(Complex64::new(v[0], v[1]))
    } else {
        Err(InstanceError::Parse("numbers must be finite".into()))
    }
}

pub fn to_pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl InstanceFile {
    pub fn from_signal(x: &ComplexSignal) -> Self {
        Self { signal: Some(x.entries().iter().copied().map(to_pair).collect()), ..Default::default() }
    }

    pub fn from_pairing(pairing: &ZeroPairing, anchor: Complex64) -> Self {
        let pairs = pairing.pairs().iter().map(|p| [to_pair(p.gamma), to_pair(p.gamma_recip)]).collect();
        Self {
            pairing: Some(PairingFile { scale: to_pair(pairing.scale()), pairs }),
            anchor: Some(to_pair(anchor)),
            ..Default::default()
        }
    }

    pub fn from_pp(pp: &PPInstance) -> Self {
        Self { pp: Some(pp.values().to_vec()), ..Default::default() }
    }

    pub fn validate(self) -> Result<Instance, InstanceError> {
        let present = [self.signal.is_some(), self.pairing.is_some(), self.pp.is_some()];
        if present.iter().filter(|&&p| p).count() != 1 {
            return Err(InstanceError::Parse("exactly one of \"signal\", \"pairing\" or \"pp\" must be present".into()));
        }
        if self.anchor.is_some() && self.pairing.is_none() {
            return Err(InstanceError::Parse("\"anchor\" is only valid with \"pairing\"".into()));
        }
        if let Some(entries) = self.signal {
            let entries = entries.into_iter().map(complex).collect::<Result<Vec<_>, _>>()?;
            let x = ComplexSignal::new(entries).map_err(|e| InstanceError::Parse(e.to_string()))?;
            return Ok(Instance::Signal(x));
        }
        if let Some(p) = self.pairing {
            let pairs = p
                .pairs
                .into_iter()
                .map(|[a, b]| Ok((complex(a)?, complex(b)?)))
                .collect::<Result<Vec<_>, InstanceError>>()?;
            let pairing = ZeroPairing::from_pairs(complex(p.scale)?, &pairs)
                .map_err(|e| InstanceError::Parse(e.to_string()))?;
            let anchor = self.anchor.map(complex).transpose()?;
            return Ok(Instance::Pairing { pairing, anchor });
        }
        let u = self.pp.expect("one kind present");
        let pp = PPInstance::new(u).map_err(|e| InstanceError::Parse(e.to_string()))?;
        Ok(Instance::Pp(pp))
    }
}
