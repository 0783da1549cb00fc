use std::fmt;

use serde::Serialize;

use crate::fpgroup::{build_gnk, Presentation};
use crate::knuthbendix::KbLimits;
use crate::toddcoxeter::TcLimits;
use crate::verify::{
    check_trace, cross_check_order, verify_fourth_power_identity, verify_h_abelian_identity,
    CrossCheck, IdentityReport, IdentityStatus,
};

/// Published order of G_{3,5}.
pub const G35_PUBLISHED_ORDER: usize = 5192;

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReferenceChecks {
    pub identities: Vec<IdentityReport>,
    pub rows: Vec<CheckRow>,
}

impl ReferenceChecks {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

impl fmt::Display for ReferenceChecks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
        for r in &self.rows {
            writeln!(
                f,
                "{:<w$}  expected {:<10} got {:<24} {}",
                r.name,
                r.expected,
                r.got,
                if r.pass { "PASS" } else { "FAIL" },
                w = w
            )?;
        }
        Ok(())
    }
}

fn identity_row(r: &IdentityReport) -> CheckRow {
    let (got, pass) = match &r.status {
        IdentityStatus::Verified { trace } => match check_trace(&r.target, trace) {
            Ok(()) => (format!("verified ({} steps)", trace.len()), true),
            Err(e) => (format!("bad trace: {}", e), false),
        },
        IdentityStatus::Failed { normal_form } => (format!("failed, nf {}", normal_form), false),
        IdentityStatus::Unknown { reason } => (format!("unknown ({:?})", reason), false),
    };
    CheckRow {
        name: r.name.clone(),
        expected: "verified".into(),
        got,
        pass,
    }
}

fn order_row(
    name: &str,
    p: &Presentation,
    expected: usize,
    tc: &TcLimits,
    kb: &KbLimits,
) -> CheckRow {
    let res = cross_check_order(p, tc, kb);
    let got = match res {
        CrossCheck::Agree { order } => format!("agree {}", order),
        CrossCheck::Disagree { tc, kb } => format!("disagree tc={} kb={}", tc, kb),
        CrossCheck::Inconclusive => "inconclusive".into(),
    };
    CheckRow {
        name: name.into(),
        expected: expected.to_string(),
        got,
        pass: res == CrossCheck::Agree { order: expected },
    }
}

/// Both word identities and the three order cross-checks.
pub fn reference_checks(tc: &TcLimits, kb: &KbLimits) -> ReferenceChecks {
    let identities = vec![
        verify_fourth_power_identity(kb),
        verify_h_abelian_identity(kb),
    ];
    let mut rows: Vec<CheckRow> = identities.iter().map(identity_row).collect();
    rows.push(order_row("order G_{2,0}", &build_gnk(2, 0), 8, tc, kb));
    rows.push(order_row(
        "order <a | a^2>",
        &Presentation::involutive(1, vec![]).expect("well-formed"),
        2,
        tc,
        kb,
    ));
    rows.push(order_row(
        "order G_{3,5}",
        &build_gnk(3, 5),
        G35_PUBLISHED_ORDER,
        tc,
        kb,
    ));
    ReferenceChecks { identities, rows }
}
