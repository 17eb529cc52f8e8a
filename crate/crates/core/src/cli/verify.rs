use crate::graph::WeightedGraph;
use crate::mds_det::{DominatingSetResult, Guarantee};
use crate::oracle::{duality_check, exact_mds, first_undominated, packing_feasible, EXACT_LIMIT};
use crate::rational::{format_rational, int};

/// Outcome of one named check; `detail` carries the first counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: &'static str) -> Self {
        Check {
            name,
            passed: true,
            detail: String::new(),
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        Check {
            name,
            passed: false,
            detail,
        }
    }

    fn from(name: &'static str, failure: Option<String>) -> Self {
        match failure {
            None => Check::pass(name),
            Some(d) => Check::fail(name, d),
        }
    }

    pub fn line(&self) -> String {
        if self.passed {
            format!("PASS {}", self.name)
        } else {
            format!("FAIL {}: {}", self.name, self.detail)
        }
    }
}

/// Re-checks a stored result against the graph. Oracle checks run only when
/// the graph is small enough for the exact solver.
pub fn verify_result(g: &WeightedGraph, r: &DominatingSetResult) -> Vec<Check> {
    let mut checks = Vec::new();
    if let Some(&v) = r.members.iter().find(|&&v| v >= g.n()) {
        checks.push(Check::fail(
            "members",
            format!("node {v} is outside the graph"),
        ));
        return checks;
    }
    let sorted = r.members.windows(2).all(|w| w[0] < w[1]);
    checks.push(Check::from(
        "members",
        (!sorted).then(|| "member list is not strictly increasing".to_string()),
    ));
    checks.push(Check::from(
        "dominating",
        first_undominated(g, &r.members).map(|v| format!("node {v} is not dominated")),
    ));
    let weight = g.set_weight(&r.members);
    checks.push(Check::from(
        "total_weight",
        (weight != r.total_weight)
            .then(|| format!("members weigh {weight}, result says {}", r.total_weight)),
    ));
    let oracle = (g.n() <= EXACT_LIMIT).then(|| exact_mds(g).ok()).flatten();
    if let Some(cert) = &r.certificate {
        if cert.entries.len() != g.n() {
            checks.push(Check::fail(
                "packing_feasible",
                format!("{} entries for {} nodes", cert.entries.len(), g.n()),
            ));
            return checks;
        }
        if cert.entries.iter().any(|e| e.base == 0) {
            checks.push(Check::fail("packing_feasible", "zero base".into()));
            return checks;
        }
        checks.push(Check::from(
            "packing_feasible",
            packing_feasible(g, cert)
                .err()
                .map(|u| format!("X_{u} exceeds w_{u}")),
        ));
        if r.guarantee == Guarantee::Packing {
            let bound = &r.claimed_factor * cert.total();
            checks.push(Check::from(
                "weight_vs_certificate",
                (int(r.total_weight) > bound).then(|| {
                    format!(
                        "weight {} exceeds {}",
                        r.total_weight,
                        format_rational(&bound)
                    )
                }),
            ));
        }
        if let Some(o) = &oracle {
            let detail = match duality_check(g, cert, o) {
                Ok(true) => None,
                Ok(false) => Some(format!(
                    "packing total {} exceeds OPT {}",
                    format_rational(&cert.total()),
                    o.opt_weight
                )),
                Err(e) => Some(e.to_string()),
            };
            checks.push(Check::from("duality", detail));
        }
    }
    if let (Some(o), Guarantee::Opt | Guarantee::Packing) = (&oracle, r.guarantee) {
        let bound = &r.claimed_factor * int(o.opt_weight);
        checks.push(Check::from(
            "weight_vs_opt",
            (int(r.total_weight) > bound).then(|| {
                format!(
                    "weight {} exceeds {} x OPT {}",
                    r.total_weight,
                    format_rational(&r.claimed_factor),
                    o.opt_weight
                )
            }),
        ));
    }
    checks
}
