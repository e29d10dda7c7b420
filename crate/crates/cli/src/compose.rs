//! Composition document parsing.
//!
//! One JSON object, either interval triples
//!
//! ```json
//! {"modulus":12, "consonances":[0,3,4,7,8,9],
//!  "intervals":[[2,7,0],[5,4,6],[2,0]]}
//! ```
//!
//! (each measure `[cantus, downbeat, upbeat]`, the last entry the closing
//! `[cantus, interval]`), or raw pitch classes
//!
//! ```json
//! {"modulus":12, "consonances":[0,3,4,7,8,9],
//!  "cantus":[2,5,2], "discantus":[[9,2],[9,11],[2]]}
//! ```
//!
//! with intervals derived as `discantus - cantus` (sweeping orientation).

use std::path::Path;

use serde::Deserialize;

use counterpoint_core::fux::Composition;
use counterpoint_core::ring::{FirstInterval, TwoInterval};

use crate::{CliError, RunConfig};

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct CompositionFile {
    modulus: u32,
    consonances: Vec<i64>,
    #[serde(default)]
    intervals: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    cantus: Option<Vec<i64>>,
    #[serde(default)]
    discantus: Option<Vec<Vec<i64>>>,
}

pub fn load_composition(path: &Path) -> Result<Composition, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let file: CompositionFile = serde_json::from_str(&raw)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;

    let config = RunConfig::from_parts(file.modulus, file.consonances.clone())?;
    let dichotomy = config.strong_dichotomy()?;
    let m = dichotomy.modulus();

    let triples: Vec<Vec<i64>> = match (&file.intervals, &file.cantus, &file.discantus) {
        (Some(intervals), None, None) => intervals.clone(),
        (None, Some(cantus), Some(discantus)) => {
            if cantus.len() != discantus.len() {
                return Err(CliError::Input(format!(
                    "field `discantus`: {} measures against {} cantus tones",
                    discantus.len(),
                    cantus.len()
                )));
            }
            cantus
                .iter()
                .zip(discantus)
                .map(|(&c, notes)| {
                    let mut entry = vec![c];
                    entry.extend(notes.iter().map(|&d| d - c));
                    entry
                })
                .collect()
        }
        _ => {
            return Err(CliError::Input(
                "expected either `intervals` or both `cantus` and `discantus`".to_string(),
            ));
        }
    };

    if triples.len() < 2 {
        return Err(CliError::Input(format!(
            "field `intervals`: need at least one measure plus the closing interval, got {} entries",
            triples.len()
        )));
    }
    let (body, closing_entry) = triples.split_at(triples.len() - 1);
    let mut measures = Vec::with_capacity(body.len());
    for (i, entry) in body.iter().enumerate() {
        let [c, x, y] = entry.as_slice() else {
            return Err(CliError::Input(format!(
                "intervals[{i}]: expected [cantus, downbeat, upbeat], got {entry:?}"
            )));
        };
        measures.push(TwoInterval::from_values(m, *c, *x, *y));
    }
    let closing = {
        let i = triples.len() - 1;
        let [c, x] = closing_entry[0].as_slice() else {
            return Err(CliError::Input(format!(
                "intervals[{i}]: the closing entry carries one note: expected [cantus, interval], got {:?}",
                closing_entry[0]
            )));
        };
        FirstInterval::from_values(m, *c, *x)
    };
    Composition::new(dichotomy, measures, closing)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
