//! Problem instances and the original cost model.
//!
//! An instance consists of operation families (each with a setup time) and
//! weighted multi-operation jobs. A schedule is a permutation of all
//! operations; the machine pays a family's setup time whenever it starts the
//! schedule with, or switches to, an operation of that family. A job completes
//! when its last operation completes and the objective is the weighted sum of
//! job completion times.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An operation family. Starting an operation of this family right after an
/// operation of a different family (or at the start of the schedule) costs
/// `setup` time units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Family {
    pub id: String,
    pub setup: f64,
}

/// One operation of a job.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Operation {
    pub id: String,
    /// Id of the family this operation belongs to.
    pub family: String,
    /// Processing time.
    pub p: f64,
}

/// A job: a nonempty set of operations plus a weight. The job is complete
/// once all of its operations are complete.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Job {
    pub id: String,
    pub weight: f64,
    pub ops: Vec<Operation>,
}

/// A full problem instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub families: Vec<Family>,
    pub jobs: Vec<Job>,
}

/// A schedule for the original problem: a permutation of all operation ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub order: Vec<String>,
}

/// Result of evaluating a schedule: the weighted total and the completion
/// time of every job.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub total: f64,
    pub jobs: BTreeMap<String, f64>,
}

impl Instance {
    /// Number of operations over all jobs.
    pub fn n_ops(&self) -> usize {
        self.jobs.iter().map(|j| j.ops.len()).sum()
    }

    /// Checks all structural invariants: unique ids, declared families,
    /// nonnegative finite times and weights, nonempty jobs. Errors carry the
    /// path of the offending field.
    pub fn validate(&self) -> Result<()> {
        fn field_err(path: String, reason: &str) -> Error {
            Error::InvalidField {
                path,
                reason: reason.to_string(),
            }
        }

        let mut families = HashMap::new();
        for (i, f) in self.families.iter().enumerate() {
            if !(f.setup >= 0.0 && f.setup.is_finite()) {
                return Err(field_err(
                    format!("families[{i}].setup"),
                    "setup time must be a finite nonnegative number",
                ));
            }
            if families.insert(f.id.clone(), i).is_some() {
                return Err(field_err(
                    format!("families[{i}].id"),
                    "duplicate family id",
                ));
            }
        }

        let mut job_ids = HashMap::new();
        let mut op_ids = HashMap::new();
        for (i, job) in self.jobs.iter().enumerate() {
            if !(job.weight >= 0.0 && job.weight.is_finite()) {
                return Err(field_err(
                    format!("jobs[{i}].weight"),
                    "weight must be a finite nonnegative number",
                ));
            }
            if job_ids.insert(job.id.clone(), i).is_some() {
                return Err(field_err(format!("jobs[{i}].id"), "duplicate job id"));
            }
            if job.ops.is_empty() {
                return Err(field_err(
                    format!("jobs[{i}].ops"),
                    "job must have at least one operation",
                ));
            }
            for (k, op) in job.ops.iter().enumerate() {
                if !(op.p >= 0.0 && op.p.is_finite()) {
                    return Err(field_err(
                        format!("jobs[{i}].ops[{k}].p"),
                        "processing time must be a finite nonnegative number",
                    ));
                }
                if !families.contains_key(&op.family) {
                    return Err(Error::InvalidField {
                        path: format!("jobs[{i}].ops[{k}].family"),
                        reason: format!("unknown family \"{}\"", op.family),
                    });
                }
                if op_ids.insert(op.id.clone(), (i, k)).is_some() {
                    return Err(field_err(
                        format!("jobs[{i}].ops[{k}].id"),
                        "duplicate operation id",
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Parses and validates an instance from its JSON form.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let instance: Instance = serde_json::from_str(text)?;
    instance.validate()?;
    Ok(instance)
}

/// Serializes an instance to JSON. `parse_instance(serialize_instance(x))`
/// reproduces `x` structurally.
pub fn serialize_instance(instance: &Instance) -> String {
    serde_json::to_string_pretty(instance).expect("instance serializes")
}

/// Evaluates a schedule under the original cost model: a setup of `s(f)` is
/// inserted before the first operation and before every operation whose
/// predecessor belongs to a different family.
pub fn evaluate_original(instance: &Instance, schedule: &Schedule) -> Result<EvalReport> {
    let view = InstanceView::new(instance)?;
    let mut order = Vec::with_capacity(schedule.order.len());
    let mut seen = vec![false; view.op_ids.len()];
    for id in &schedule.order {
        let &op = view
            .op_lookup
            .get(id)
            .ok_or_else(|| Error::MalformedSchedule(format!("unknown operation id \"{id}\"")))?;
        if seen[op] {
            return Err(Error::MalformedSchedule(format!(
                "operation \"{id}\" appears more than once"
            )));
        }
        seen[op] = true;
        order.push(op);
    }
    if order.len() != view.op_ids.len() {
        let missing = seen.iter().position(|s| !s).expect("some op missing");
        return Err(Error::MalformedSchedule(format!(
            "operation \"{}\" is missing from the schedule",
            view.op_ids[missing]
        )));
    }

    let mut job_completion = vec![0.0_f64; view.job_ids.len()];
    view.eval_order(&order, &mut job_completion);
    let total = job_completion
        .iter()
        .zip(&view.job_weight)
        .map(|(c, w)| w * c)
        .sum();
    let jobs = view
        .job_ids
        .iter()
        .cloned()
        .zip(job_completion.iter().copied())
        .collect();
    Ok(EvalReport { total, jobs })
}

/// Compares two (processing, weight) pairs by the weighted shortest processing
/// time criterion p/w without dividing: finite ratios are ordered by
/// cross-multiplication, zero-weight items order last (ratio +inf). Items with
/// p = 0 and w = 0 also order last; any position is cost-neutral for them and
/// this keeps the comparison a total order.
pub fn wspt_cmp(p_a: f64, w_a: f64, p_b: f64, w_b: f64) -> Ordering {
    match (w_a == 0.0, w_b == 0.0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => (p_a * w_b)
            .partial_cmp(&(p_b * w_a))
            .expect("finite processing times and weights"),
    }
}

/// Sorts `(id, p, w)` triples into weighted-SPT order. Equal ratios keep
/// their input order (lower index first).
pub fn wspt_order<T: Clone>(items: &[(T, f64, f64)]) -> Vec<T> {
    let mut idx: Vec<usize> = (0..items.len()).collect();
    idx.sort_by(|&a, &b| {
        wspt_cmp(items[a].1, items[a].2, items[b].1, items[b].2).then(a.cmp(&b))
    });
    idx.into_iter().map(|i| items[i].0.clone()).collect()
}

/// Index-based view of a validated instance, shared by the evaluators and the
/// brute-force searches.
pub(crate) struct InstanceView {
    pub family_ids: Vec<String>,
    pub family_setup: Vec<f64>,
    pub family_lookup: HashMap<String, usize>,
    pub op_ids: Vec<String>,
    pub op_family: Vec<usize>,
    pub op_p: Vec<f64>,
    pub op_job: Vec<usize>,
    pub op_lookup: HashMap<String, usize>,
    pub job_ids: Vec<String>,
    pub job_weight: Vec<f64>,
}

impl InstanceView {
    pub fn new(instance: &Instance) -> Result<Self> {
        instance.validate()?;
        let family_ids: Vec<String> = instance.families.iter().map(|f| f.id.clone()).collect();
        let family_setup: Vec<f64> = instance.families.iter().map(|f| f.setup).collect();
        let family_lookup: HashMap<String, usize> = family_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        let mut view = InstanceView {
            family_ids,
            family_setup,
            family_lookup,
            op_ids: Vec::new(),
            op_family: Vec::new(),
            op_p: Vec::new(),
            op_job: Vec::new(),
            op_lookup: HashMap::new(),
            job_ids: Vec::new(),
            job_weight: Vec::new(),
        };
        for (j, job) in instance.jobs.iter().enumerate() {
            view.job_ids.push(job.id.clone());
            view.job_weight.push(job.weight);
            for op in &job.ops {
                let idx = view.op_ids.len();
                view.op_ids.push(op.id.clone());
                view.op_family.push(view.family_lookup[&op.family]);
                view.op_p.push(op.p);
                view.op_job.push(j);
                view.op_lookup.insert(op.id.clone(), idx);
            }
        }
        Ok(view)
    }

    /// Walks an operation order and fills `job_completion` (one slot per job)
    /// with each job's completion time under the original cost model.
    pub fn eval_order(&self, order: &[usize], job_completion: &mut [f64]) {
        job_completion.fill(0.0);
        let mut t = 0.0;
        let mut prev_family = usize::MAX;
        for &op in order {
            let fam = self.op_family[op];
            if fam != prev_family {
                t += self.family_setup[fam];
                prev_family = fam;
            }
            t += self.op_p[op];
            let job = self.op_job[op];
            if t > job_completion[job] {
                job_completion[job] = t;
            }
        }
    }

    /// Weighted total of a completion vector.
    pub fn weighted_total(&self, job_completion: &[f64]) -> f64 {
        job_completion
            .iter()
            .zip(&self.job_weight)
            .map(|(c, w)| w * c)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two families (setups 1 and 2), job j1 (weight 2) with ops a(f1, p=2)
    /// and b(f2, p=1), job j2 (weight 1) with op c(f1, p=3).
    pub(crate) fn example_instance() -> Instance {
        Instance {
            families: vec![
                Family { id: "f1".into(), setup: 1.0 },
                Family { id: "f2".into(), setup: 2.0 },
            ],
            jobs: vec![
                Job {
                    id: "j1".into(),
                    weight: 2.0,
                    ops: vec![
                        Operation { id: "a".into(), family: "f1".into(), p: 2.0 },
                        Operation { id: "b".into(), family: "f2".into(), p: 1.0 },
                    ],
                },
                Job {
                    id: "j2".into(),
                    weight: 1.0,
                    ops: vec![Operation { id: "c".into(), family: "f1".into(), p: 3.0 }],
                },
            ],
        }
    }

    fn order(ids: &[&str]) -> Schedule {
        Schedule {
            order: ids.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn evaluate_example_order_abc() {
        let inst = example_instance();
        let report = evaluate_original(&inst, &order(&["a", "b", "c"])).unwrap();
        // a completes at 3 (setup 1 + p 2), b at 6 (setup 2 + p 1), c at 10
        // (setup 1 again + p 3); j1 = max(3,6) = 6, j2 = 10.
        assert_eq!(report.jobs["j1"], 6.0);
        assert_eq!(report.jobs["j2"], 10.0);
        assert_eq!(report.total, 22.0);
    }

    #[test]
    fn evaluate_example_order_bac() {
        let inst = example_instance();
        let report = evaluate_original(&inst, &order(&["b", "a", "c"])).unwrap();
        assert_eq!(report.total, 21.0);
    }

    #[test]
    fn evaluate_single_op_pays_one_setup() {
        let inst = Instance {
            families: vec![Family { id: "f".into(), setup: 2.5 }],
            jobs: vec![Job {
                id: "j".into(),
                weight: 1.0,
                ops: vec![Operation { id: "o".into(), family: "f".into(), p: 4.0 }],
            }],
        };
        let report = evaluate_original(&inst, &order(&["o"])).unwrap();
        assert_eq!(report.total, 6.5);
    }

    #[test]
    fn evaluate_rejects_malformed_schedules() {
        let inst = example_instance();
        assert!(matches!(
            evaluate_original(&inst, &order(&["a", "b", "x"])),
            Err(Error::MalformedSchedule(_))
        ));
        assert!(matches!(
            evaluate_original(&inst, &order(&["a", "b", "b"])),
            Err(Error::MalformedSchedule(_))
        ));
        assert!(matches!(
            evaluate_original(&inst, &order(&["a", "b"])),
            Err(Error::MalformedSchedule(_))
        ));
    }

    #[test]
    fn wspt_order_examples() {
        // ratios 2, 1, 1; tie between j2 and j3 broken by index.
        let got = wspt_order(&[("j1", 2.0, 1.0), ("j2", 1.0, 1.0), ("j3", 3.0, 3.0)]);
        assert_eq!(got, vec!["j2", "j3", "j1"]);

        // zero weight sorts last.
        let got = wspt_order(&[("j1", 5.0, 0.0), ("j2", 1.0, 1.0)]);
        assert_eq!(got, vec!["j2", "j1"]);

        // identical ratio, index tie-break.
        let got = wspt_order(&[("j1", 1.0, 2.0), ("j2", 1.0, 2.0)]);
        assert_eq!(got, vec!["j1", "j2"]);
    }

    #[test]
    fn wspt_cmp_is_total_on_degenerate_pairs() {
        // p = w = 0 ties with other zero-weight items and sorts after any
        // positive-weight item, keeping the comparator transitive.
        assert_eq!(wspt_cmp(0.0, 0.0, 5.0, 0.0), Ordering::Equal);
        assert_eq!(wspt_cmp(0.0, 0.0, 1.0, 1.0), Ordering::Greater);
        assert_eq!(wspt_cmp(0.0, 1.0, 1.0, 1.0), Ordering::Less);
    }

    #[test]
    fn parse_minimal_document() {
        let text = r#"{"families":[{"id":"f","setup":1}],
                       "jobs":[{"id":"j","weight":1,"ops":[{"id":"o","family":"f","p":2}]}]}"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.families.len(), 1);
        assert_eq!(inst.jobs[0].ops[0].p, 2.0);
    }

    #[test]
    fn parse_reports_path_of_unknown_family() {
        let text = r#"{"families":[{"id":"f","setup":1}],
                       "jobs":[{"id":"j","weight":1,"ops":[{"id":"o","family":"g","p":2}]}]}"#;
        match parse_instance(text) {
            Err(Error::InvalidField { path, reason }) => {
                assert_eq!(path, "jobs[0].ops[0].family");
                assert!(reason.contains("unknown family"));
            }
            other => panic!("expected field error, got {other:?}"),
        }
    }

    #[test]
    fn parse_reports_negative_values() {
        let text = r#"{"families":[{"id":"f","setup":-1}],"jobs":[]}"#;
        match parse_instance(text) {
            Err(Error::InvalidField { path, .. }) => assert_eq!(path, "families[0].setup"),
            other => panic!("expected field error, got {other:?}"),
        }
        let text = r#"{"families":[{"id":"f","setup":1}],
                       "jobs":[{"id":"j","weight":-0.5,"ops":[{"id":"o","family":"f","p":2}]}]}"#;
        match parse_instance(text) {
            Err(Error::InvalidField { path, .. }) => assert_eq!(path, "jobs[0].weight"),
            other => panic!("expected field error, got {other:?}"),
        }
    }

    #[test]
    fn serialize_round_trip() {
        let inst = example_instance();
        let round = parse_instance(&serialize_instance(&inst)).unwrap();
        assert_eq!(round, inst);
    }

    #[test]
    fn relabeling_does_not_change_total() {
        let inst = example_instance();
        let mut renamed = inst.clone();
        renamed.families[0].id = "alpha".into();
        for job in &mut renamed.jobs {
            for op in &mut job.ops {
                if op.family == "f1" {
                    op.family = "alpha".into();
                }
            }
        }
        renamed.jobs[0].ops[0].id = "x".into();
        let orig = evaluate_original(&inst, &order(&["a", "b", "c"])).unwrap();
        let ren = evaluate_original(&renamed, &order(&["x", "b", "c"])).unwrap();
        assert_eq!(orig.total, ren.total);
    }
}

#[cfg(test)]
pub(crate) use tests::example_instance;
