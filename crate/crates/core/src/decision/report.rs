use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Consequence generation ran out before matching the exact dimension.
    Warn,
}

/// Dimensions reported by slice checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub slice: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub central: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combined_rank: Option<usize>,
}

impl Dims {
    pub fn slice(n: usize) -> Dims {
        Dims { slice: n, identity: None, central: None, claimed: None, basis: None, combined_rank: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Dims>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check { name: name.into(), status: Status::Pass, dims: None, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Check {
        Check { name: name.into(), status: Status::Fail, dims: None, witness: Some(witness.into()) }
    }

    pub fn with_dims(mut self, dims: Dims) -> Check {
        self.dims = Some(dims);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub field: String,
    pub mode: String,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = VerificationReport {
            theorem: "CentralS".into(),
            field: "F3".into(),
            mode: "exhaustive(F3)".into(),
            checks: vec![
                Check::pass("generator y1"),
                Check::fail("slice (z1:1)", "z1 = [1, 0; 0, 2]").with_dims(Dims::slice(1)),
            ],
            elapsed_ms: 5,
        };
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][0]["status"], "pass");
        assert!(v["checks"][0].get("witness").is_none());
        assert_eq!(v["checks"][1]["dims"]["slice"], 1);
        assert!(!r.passed());
    }
}
