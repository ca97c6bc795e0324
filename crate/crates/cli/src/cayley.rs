//! Cayley table files: `{"names": [...], "table": [[...], ...]}` with the
//! identity at index 0.

use std::fs;
use std::path::Path;

use fingeom::FiniteGroup;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CayleyFile {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl CayleyFile {
    pub fn from_group(group: &FiniteGroup) -> Self {
        CayleyFile {
            names: group.names().to_vec(),
            table: group.table(),
        }
    }

    pub fn into_group(self) -> Result<FiniteGroup, CliError> {
        Ok(FiniteGroup::from_table(self.names, self.table)?)
    }
}

pub fn parse_cayley(text: &str) -> Result<FiniteGroup, CliError> {
    let file: CayleyFile = serde_json::from_str(text)
        .map_err(|e| CliError::Validation(format!("malformed Cayley file: {e}")))?;
    file.into_group()
}

pub fn load_cayley(path: &Path) -> Result<FiniteGroup, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_cayley(&text)
}

pub fn export_cayley(group: &FiniteGroup) -> String {
    let mut out =
        serde_json::to_string(&CayleyFile::from_group(group)).expect("plain data serializes");
    out.push('\n');
    out
}
