//! Meta-operations applied to every declaration of a program.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::computads::{Cell, Computad};
use crate::dimset::DimSet;
use crate::homcat::hom_realize;
use crate::metaops::{desuspend_cell, desuspend_computad, op_cell, op_computad, suspend_cell, suspend_computad, DesuspendError};
use crate::name::Name;

use super::elab::hom_value;
use super::{Item, Loc, Program, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transform {
    Susp,
    Op(DimSet),
    Desusp,
}

/// A declaration the transform does not apply to.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{name}`: error[{code}]: {message}")]
pub struct TransformError {
    pub name: Name,
    pub code: &'static str,
    pub message: String,
}

impl TransformError {
    fn desusp(name: &Name, e: DesuspendError) -> Self {
        let message = if e.path.segments().is_empty() {
            e.kind.to_string()
        } else {
            format!("{} (at {})", e.kind, e.path)
        };
        TransformError { name: name.clone(), code: e.code(), message }
    }
}

impl Transform {
    fn computad(&self, c: &Computad) -> Result<Computad, DesuspendError> {
        Ok(match self {
            Transform::Susp => suspend_computad(c).computad,
            Transform::Op(w) => op_computad(w, c),
            Transform::Desusp => desuspend_computad(c)?,
        })
    }

    fn cell(&self, c: &Cell) -> Result<Cell, DesuspendError> {
        Ok(match self {
            Transform::Susp => suspend_cell(c),
            Transform::Op(w) => op_cell(w, c),
            Transform::Desusp => desuspend_cell(c)?,
        })
    }

    /// Transform every computad and binding. Hom bindings are realized,
    /// transformed and factored again at the new 0-boundaries.
    pub fn apply(&self, p: &Program) -> Result<Program, TransformError> {
        let mut homes: HashMap<*const Computad, Arc<Computad>> = HashMap::new();
        let mut home = |name: &Name, c: &Arc<Computad>| -> Result<Arc<Computad>, TransformError> {
            if let Some(h) = homes.get(&Arc::as_ptr(c)) {
                return Ok(h.clone());
            }
            let h = Arc::new(self.computad(c).map_err(|e| TransformError::desusp(name, e))?);
            homes.insert(Arc::as_ptr(c), h.clone());
            Ok(h)
        };
        let mut items = Vec::new();
        for item in &p.items {
            items.push(match item {
                Item::Computad { name, computad } => Item::Computad { name: name.clone(), computad: home(name, computad)? },
                Item::Let { name, value: Value::Cell { home: h, cell } } => Item::Let {
                    name: name.clone(),
                    value: Value::Cell {
                        home: home(name, h)?,
                        cell: self.cell(cell).map_err(|e| TransformError::desusp(name, e))?,
                    },
                },
                Item::Let { name, value: Value::Hom { home: h, cell } } => {
                    let loop_cell = hom_realize(h, cell).map_err(|e| TransformError {
                        name: name.clone(),
                        code: e.code(),
                        message: e.to_string(),
                    })?;
                    let c = self.cell(&loop_cell).map_err(|e| TransformError::desusp(name, e))?;
                    let hc = self.computad(&h.computad).map_err(|e| TransformError::desusp(name, e))?;
                    let value = hom_value(Loc::default(), &hc, &c).map_err(|e| TransformError {
                        name: name.clone(),
                        code: e.code(),
                        message: e.message,
                    })?;
                    Item::Let { name: name.clone(), value }
                }
            });
        }
        Ok(Program { items })
    }
}
