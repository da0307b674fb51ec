//! Running claims and rendering the results.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::claims::{Bounds, Claim, Status, CLAIMS};

pub const SCHEMA: &str = "aisr.reproduce/1";

#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub id: &'static str,
    pub criterion: u8,
    pub description: &'static str,
    pub status: Status,
    pub details: Vec<String>,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub bounds: Bounds,
    pub items: Vec<Item>,
}

impl Report {
    pub fn all_verified(&self) -> bool {
        self.items.iter().all(|i| i.status == Status::Verified)
    }

    pub fn any_refuted(&self) -> bool {
        self.items.iter().any(|i| i.status == Status::Refuted)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for it in &self.items {
            out.push_str(&format!(
                "[{}] {} ({} ms): {}\n",
                it.status.as_str(),
                it.id,
                it.elapsed_ms,
                it.description
            ));
            for d in &it.details {
                out.push_str(&format!("    {d}\n"));
            }
        }
        let count = |s| self.items.iter().filter(|i| i.status == s).count();
        out.push_str(&format!(
            "{} verified, {} refuted, {} skipped\n",
            count(Status::Verified),
            count(Status::Refuted),
            count(Status::Skipped)
        ));
        out
    }
}

pub fn run_claim(claim: &Claim, bounds: &Bounds) -> Item {
    let start = Instant::now();
    let outcome = (claim.run)(bounds);
    Item {
        id: claim.id,
        criterion: claim.criterion,
        description: claim.description,
        status: outcome.status,
        details: outcome.details,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// Runs the selected claims (all when `ids` is empty) in parallel; the items
/// come back sorted by id.
pub fn run(ids: &[String], bounds: &Bounds) -> Result<Report, String> {
    let mut selected: Vec<&Claim> = Vec::new();
    if ids.is_empty() {
        selected.extend(CLAIMS.iter());
    } else {
        for id in ids {
            let c = crate::claims::find(id).ok_or_else(|| format!("unknown claim `{id}`"))?;
            selected.push(c);
        }
    }
    selected.sort_by_key(|c| c.id);
    selected.dedup_by_key(|c| c.id);
    Ok(Report {
        schema: SCHEMA,
        bounds: bounds.clone(),
        items: selected.par_iter().map(|c| run_claim(c, bounds)).collect(),
    })
}
