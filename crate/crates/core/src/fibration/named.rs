//! The three fibrations on `X(p)` used to build the automorphism: the
//! isotrivial one and two found from extended Dynkin configurations.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use super::{
    find_ade_configurations, induce_fibration, AdeConfig, AffineKind, Component, FiberSpec,
    FibrationData, KodairaType,
};
use crate::error::{Error, Result};
use crate::ns::{
    basis, configuration_graph, curve_table, CurveGraph, CurveKind, NSModel, FIBER_INF, FIBER_ONE,
    FIBER_ZERO,
};

/// Which fibration a section name refers to: `S`, `S'` or `S''`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FibrationName {
    #[serde(rename = "pi")]
    Pi,
    #[serde(rename = "pi'")]
    PiPrime,
    #[serde(rename = "pi''")]
    PiDoublePrime,
}

impl FibrationName {
    pub fn from_primes(k: usize) -> Result<Self> {
        match k {
            0 => Ok(FibrationName::Pi),
            1 => Ok(FibrationName::PiPrime),
            2 => Ok(FibrationName::PiDoublePrime),
            _ => Err(Error::InvalidInput(format!("no fibration with {k} primes"))),
        }
    }

    pub fn primes(self) -> usize {
        self as usize
    }
}

impl fmt::Display for FibrationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi{}", "'".repeat(self.primes()))
    }
}

impl FromStr for FibrationName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let rest = s
            .strip_prefix("pi")
            .filter(|r| r.chars().all(|c| c == '\''))
            .ok_or_else(|| Error::InvalidInput(format!("unknown fibration {s:?}")))?;
        FibrationName::from_primes(rest.len())
    }
}

/// The fibration with fiber `F`, zero section `O` and fibers III*, III*, I0*.
pub fn isotrivial_fibration(model: &NSModel) -> Result<FibrationData> {
    let table = curve_table(model)?;
    let fiber = |id: &str, kodaira: KodairaType| FiberSpec {
        kodaira,
        position: id.to_string(),
        components: table
            .iter()
            .filter(|r| r.kind == CurveKind::FiberComponent && r.fiber_id.as_deref() == Some(id))
            .map(|r| {
                Component::new(
                    r.label.clone(),
                    r.class.clone(),
                    r.multiplicity.unwrap_or(1),
                )
            })
            .collect(),
    };
    FibrationData::new(
        FibrationName::Pi.to_string(),
        Arc::new(model.gram().clone()),
        model.unit(basis::F),
        "O",
        model.unit(basis::O),
        vec![
            fiber(FIBER_INF, KodairaType::IIIStar),
            fiber(FIBER_ZERO, KodairaType::IIIStar),
            fiber(FIBER_ONE, KodairaType::IStar(0)),
        ],
        2,
    )
}

/// Label of the curve used as zero section for both alternative fibrations.
pub const ALTERNATIVE_ZERO: &str = "e8";

/// The first configuration of the wanted kind, in the finder's order, that
/// induces a fibration with `e8` as zero section and the expected fibers:
/// `I16 + I4` for `pi'`, `I12 + IV*` for `pi''`.
pub fn alternative_fibration(
    model: &NSModel,
    graph: &CurveGraph,
    configs: &[AdeConfig],
    which: FibrationName,
) -> Result<(AdeConfig, FibrationData)> {
    let (kind, expected) = match which {
        FibrationName::Pi => {
            return Err(Error::InvalidInput(
                "pi is built directly, not from a configuration".into(),
            ))
        }
        FibrationName::PiPrime => (AffineKind::A(15), [KodairaType::I(16), KodairaType::I(4)]),
        FibrationName::PiDoublePrime => {
            (AffineKind::A(11), [KodairaType::I(12), KodairaType::IVStar])
        }
    };
    let gram = Arc::new(model.gram().clone());
    let zero = graph
        .find(ALTERNATIVE_ZERO)
        .ok_or_else(|| Error::Consistency("curve graph lacks e8".into()))?;
    for config in configs.iter().filter(|c| c.kind == kind) {
        let deg = model.dot(&graph.vertices[zero].class, &config.fiber_class);
        if !deg.is_one() {
            continue;
        }
        let f = induce_fibration(
            &which.to_string(),
            config,
            graph,
            gram.clone(),
            Some(ALTERNATIVE_ZERO),
            2,
        )?;
        let types: Vec<KodairaType> = f.fibers.iter().map(|x| x.kodaira).collect();
        if types == expected {
            return Ok((config.clone(), f));
        }
    }
    Err(Error::Consistency(format!(
        "no {kind} configuration induces {which} with zero section {ALTERNATIVE_ZERO}"
    )))
}

#[derive(Clone, Debug)]
pub struct StandardFibrations {
    pub graph: CurveGraph,
    pub configs: Vec<AdeConfig>,
    pub pi: FibrationData,
    pub pi_prime: FibrationData,
    pub pi_double_prime: FibrationData,
}

impl StandardFibrations {
    pub fn get(&self, name: FibrationName) -> &FibrationData {
        match name {
            FibrationName::Pi => &self.pi,
            FibrationName::PiPrime => &self.pi_prime,
            FibrationName::PiDoublePrime => &self.pi_double_prime,
        }
    }
}

pub fn standard_fibrations(model: &NSModel) -> Result<StandardFibrations> {
    let graph = configuration_graph(model)?;
    let configs = find_ade_configurations(&graph)?;
    let pi = isotrivial_fibration(model)?;
    let (_, pi_prime) = alternative_fibration(model, &graph, &configs, FibrationName::PiPrime)?;
    let (_, pi_double_prime) =
        alternative_fibration(model, &graph, &configs, FibrationName::PiDoublePrime)?;
    Ok(StandardFibrations {
        graph,
        configs,
        pi,
        pi_prime,
        pi_double_prime,
    })
}
