//! Stationary cameras on a grid that turn in 45° steps.
//!
//! Cameras are the agents; `dir_<camera>` holds the heading in degrees and is
//! public. Object variables hold the value written on each object. A camera
//! sees an object when the bearing to it differs from the heading by strictly
//! less than 45°, or when the object shares the camera's position.

use std::sync::Arc;

use crate::error::ModelError;
use crate::observation::ObservationModel;
use crate::signature::{AgentId, Signature, Value, VarId};
use crate::state::State;

use super::require_var;

pub const DOMAIN: &str = include_str!("../../benchmarks/bbl/domain.gjp");

/// Half-width of the field of view, exclusive.
pub const HALF_FOV: f64 = 45.0;

/// Positions of cameras and objects, by name.
#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    pub cameras: Vec<(String, (i64, i64))>,
    pub objects: Vec<(String, (i64, i64))>,
}

impl Layout {
    /// Cameras `a` at (3,3) and `b` at (1,1); objects `o1`, `o2`, `o3` at
    /// (0,0), (2,2) and (3,3).
    pub fn standard() -> Self {
        let s = |n: &str, p| (n.to_string(), p);
        Layout {
            cameras: vec![s("a", (3, 3)), s("b", (1, 1))],
            objects: vec![s("o1", (0, 0)), s("o2", (2, 2)), s("o3", (3, 3))],
        }
    }
}

/// Whether a camera at `cam` heading `dir` degrees sees position `obj`.
pub fn in_view(cam: (i64, i64), dir: i64, obj: (i64, i64)) -> bool {
    if cam == obj {
        return true;
    }
    let bearing = ((obj.1 - cam.1) as f64).atan2((obj.0 - cam.0) as f64).to_degrees();
    let mut diff = (bearing - dir as f64) % 360.0;
    if diff > 180.0 {
        diff -= 360.0;
    } else if diff < -180.0 {
        diff += 360.0;
    }
    diff.abs() < HALF_FOV - 1e-9
}

#[derive(Clone, Debug)]
pub struct BblModel {
    /// Per agent: heading variable and position.
    cameras: Vec<(VarId, (i64, i64))>,
    /// Object variable to position.
    objects: Vec<Option<(i64, i64)>>,
}

impl BblModel {
    pub fn new(sig: &Signature, layout: &Layout) -> Result<Self, ModelError> {
        let mut cameras = Vec::new();
        for a in sig.agents() {
            let name = sig.agent_name(a);
            let pos = layout
                .cameras
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, p)| *p)
                .ok_or_else(|| ModelError::Invalid {
                    model: "bbl".into(),
                    reason: format!("no position for camera `{name}`"),
                })?;
            cameras.push((require_var("bbl", sig, &format!("dir_{name}"))?, pos));
        }
        let mut objects = vec![None; sig.num_vars()];
        for (name, pos) in &layout.objects {
            objects[require_var("bbl", sig, name)?.index()] = Some(*pos);
        }
        Ok(BblModel { cameras, objects })
    }
}

impl ObservationModel for BblModel {
    fn name(&self) -> &str {
        "bbl"
    }

    fn sees(&self, agent: AgentId, state: &State, var: VarId) -> bool {
        let Some(obj) = self.objects[var.index()] else {
            return true;
        };
        let (dir, pos) = self.cameras[agent.index()];
        if pos == obj {
            return true;
        }
        match state.get(dir) {
            Some(Value::Int(d)) => in_view(pos, d, obj),
            _ => false,
        }
    }
}

pub fn model(sig: &Signature) -> Result<Arc<dyn ObservationModel>, ModelError> {
    Ok(Arc::new(BblModel::new(sig, &Layout::standard())?))
}
