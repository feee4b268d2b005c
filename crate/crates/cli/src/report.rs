//! Text and JSON reports for the subcommands that inspect a single table.

use std::fmt::Write as _;

use ghz_core::document::render_table;
use ghz_core::genuine::{check_dimensional, check_multipartite, project_and_verify};
use ghz_core::lhv::{build_system, eigen_targets, solve_or_refute, state_independent_certificate, Outcome};
use ghz_core::oracle::{flat_ghz_state, joint_eigenbasis, oracle_verify, snap_phase, OracleConfig, C64};
use ghz_core::search::{ConjectureReport, SearchResult, SearchSpec};
use ghz_core::{verify, Dimension, Error, PhaseExp, Verdict};
use serde_json::{json, Value};

use crate::{load_table, CmdResult, Failure};

pub fn phase_text(p: Option<PhaseExp>, d: Dimension) -> String {
    match p {
        None => "not a scalar".into(),
        Some(p) if p.is_one() => "+1".into(),
        Some(p) if p.exponent() == d.get() => "-1".into(),
        Some(p) => match p.as_dth_root() {
            Some(k) => format!("ω^{k} (ω = e^(2πi/{d}))"),
            None => format!("e^(iπ·{}/{d})", p.exponent()),
        },
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn one_based(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(|j| (j + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Collects text output and JSON fields side by side.
struct Report {
    text: String,
    json: serde_json::Map<String, Value>,
    ok: bool,
}

impl Report {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn field(&mut self, key: &str, v: Value) {
        self.json.insert(key.into(), v);
    }

    fn finish(self, as_json: bool) -> CmdResult {
        if as_json {
            let mut obj = self.json;
            obj.insert("ok".into(), json!(self.ok));
            println!("{}", serde_json::to_string_pretty(&Value::Object(obj)).expect("reports serialize"));
        } else {
            print!("{}", self.text);
        }
        if self.ok {
            Ok(())
        } else {
            Err(Failure::Claim)
        }
    }
}

pub fn cmd_verify(spec: &str, oracle: bool, genuine: bool, lhv: bool, as_json: bool, cfg: &OracleConfig) -> CmdResult {
    let (t, doc) = load_table(spec)?;
    let d = t.dim();
    let v = verify(&t);
    let mut r = Report {
        text: render_table(&t),
        json: serde_json::Map::new(),
        ok: v.is_paradox,
    };
    r.field("label", json!(t.label));
    r.field("dimension", json!(d.get()));
    r.field("parties", json!(t.parties()));
    r.field("verdict", json!(v));
    r.line(format!("commuting:        {}", yes(v.commuting)));
    r.line(format!("product:          {}", phase_text(v.quantum_phase, d)));
    r.line(format!("classical forced: {}", yes(v.classical_forced)));
    match &v.failure_witness {
        None => r.line("paradox:          yes"),
        Some(w) => r.line(format!("paradox:          no ({w})")),
    }

    if let Some(expected) = doc.and_then(|doc| doc.expected) {
        if let Some(pe) = expected.phase_exp {
            let got = v.quantum_phase.map(|p| p.exponent());
            let ok = got == Some(pe % d.phase_modulus());
            r.ok &= ok;
            r.line(format!(
                "expected product: e^(iπ·{pe}/{d}) {}",
                if ok { "matches" } else { "MISMATCH" }
            ));
            r.field("expected_phase_ok", json!(ok));
        }
        if let Some(mu) = expected.eigenvalues {
            let psi = flat_ghz_state(d, t.parties(), cfg)?;
            let got = eigen_targets(&t, &psi, cfg).ok();
            let ok = got.as_deref() == Some(&mu[..]);
            r.ok &= ok;
            r.line(format!(
                "expected GHZ eigenvalues {mu:?}: {}",
                match &got {
                    Some(g) if ok => format!("match {g:?}"),
                    Some(g) => format!("MISMATCH, got {g:?}"),
                    None => "MISMATCH, flat GHZ state is not a joint eigenstate".into(),
                }
            ));
            r.field("expected_eigenvalues_ok", json!(ok));
        }
    }

    if oracle {
        let ov = oracle_verify(&t, cfg)?;
        let agree = agrees(&v, &ov);
        r.ok &= agree;
        r.line(format!(
            "oracle ({}x{} matrices): paradox {}, product {}, {}",
            (d.get() as usize).pow(t.parties() as u32),
            (d.get() as usize).pow(t.parties() as u32),
            yes(ov.is_paradox),
            phase_text(ov.quantum_phase, d),
            if agree { "agrees" } else { "DISAGREES" }
        ));
        r.field("oracle", json!({"verdict": ov, "agrees": agree}));
    }

    if genuine {
        let mp = check_multipartite(&t)?;
        let m = t.parties();
        if mp.genuine {
            r.line(format!("genuinely {m}-partite: yes"));
        } else {
            let subsets: Vec<String> = mp.reducing_subsets.iter().map(|s| one_based(s)).collect();
            r.line(format!(
                "genuinely {m}-partite: no (not genuinely {m}-partite; paradox on parties {})",
                subsets.join(" ")
            ));
        }
        if let Some(any) = mp.genuine_rows_any {
            if any != mp.genuine {
                r.line(format!("  allowing row subsets: {}", if any { "genuine" } else { "reducible" }));
            }
        }
        let dr = check_dimensional(&t);
        let min = dr.per_column_min_dim[dr.limiting_column];
        if dr.genuine {
            r.line(format!("genuinely {d}-dimensional: yes"));
        } else {
            r.line(format!(
                "genuinely {d}-dimensional: no (only {min}-dimensional; party {} needs {min})",
                dr.limiting_column + 1
            ));
        }
        r.line(format!("  per-party minimal dimension: {:?}", dr.per_column_min_dim));
        r.ok &= mp.genuine && dr.genuine;
        r.field("multipartite", json!(mp));
        r.field("dimensional", json!(dr));
    }

    if lhv {
        let refuted = lhv_section(&t, cfg, &mut r)?;
        r.ok &= refuted;
    }
    r.finish(as_json)
}

fn agrees(a: &Verdict, b: &Verdict) -> bool {
    a.is_paradox == b.is_paradox
        && a.commuting == b.commuting
        && a.quantum_phase == b.quantum_phase
        && a.classical_forced == b.classical_forced
}

/// Refutes value assignments: on the flat GHZ state when it is a joint
/// eigenstate, otherwise state-independently.
fn lhv_section(t: &ghz_core::ParadoxTable, cfg: &OracleConfig, r: &mut Report) -> Result<bool, Failure> {
    let ghz_targets = match flat_ghz_state(t.dim(), t.parties(), cfg) {
        Ok(psi) => eigen_targets(t, &psi, cfg).ok(),
        Err(Error::Capacity { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    if let Some(mu) = ghz_targets {
        let sys = build_system(t, &mu)?;
        let outcome = solve_or_refute(&sys);
        r.line(format!("classical values on the GHZ state (row eigenvalue exponents {mu:?}): {outcome}"));
        if let Outcome::Infeasible { certificate } = &outcome {
            r.line(format!("  {}", certificate.render(&sys)));
        }
        r.field("lhv", json!({"state": "ghz", "targets": mu, "outcome": outcome}));
        return Ok(outcome.is_infeasible());
    }
    match state_independent_certificate(t) {
        Some(cert) => {
            let k = verify(t).quantum_phase.and_then(|p| p.as_dth_root()).unwrap_or(0);
            let mut targets = vec![0; t.len()];
            targets[0] = k;
            let sys = build_system(t, &targets)?;
            r.line("classical values on every joint eigenstate: infeasible");
            r.line(format!("  {}", cert.render(&sys)));
            r.field("lhv", json!({"state": "any", "certificate": cert}));
            Ok(true)
        }
        None => {
            r.line("classical values: no refutation (table is not a paradox)");
            r.field("lhv", Value::Null);
            Ok(false)
        }
    }
}

fn ket(mut index: usize, d: usize, parties: usize) -> String {
    let mut digits = vec![0; parties];
    for slot in digits.iter_mut().rev() {
        *slot = index % d;
        index /= d;
    }
    let sep = if d > 10 { "," } else { "" };
    let s: Vec<String> = digits.iter().map(ToString::to_string).collect();
    format!("|{}⟩", s.join(sep))
}

fn complex_text(c: C64) -> String {
    format!("{:+.4}{:+.4}i", c.re, c.im)
}

pub fn cmd_eigenbasis(spec: &str, limit: usize, as_json: bool, cfg: &OracleConfig) -> CmdResult {
    let (t, _) = load_table(spec)?;
    let d = t.dim();
    let basis = joint_eigenbasis(&t, cfg)?;
    let roots = |vals: &[C64]| -> Vec<Option<u32>> {
        vals.iter()
            .map(|&l| snap_phase(l, d, cfg.tol_eigen).and_then(|p| p.as_dth_root()))
            .collect()
    };
    let tol = cfg.tol_basis;
    if as_json {
        let vectors: Vec<Value> = basis
            .iter()
            .take(limit)
            .map(|v| {
                let support: Vec<Value> = v
                    .state
                    .amplitudes()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.norm() > tol)
                    .map(|(i, a)| json!({"index": i, "re": a.re, "im": a.im}))
                    .collect();
                json!({"eigenvalue_exponents": roots(&v.eigenvalues), "support": support})
            })
            .collect();
        let out = json!({"size": basis.len(), "shown": vectors.len(), "vectors": vectors});
        println!("{}", serde_json::to_string_pretty(&out).expect("reports serialize"));
        return Ok(());
    }
    let mut out = render_table(&t);
    let _ = writeln!(out, "joint eigenbasis: {} vectors (showing {})", basis.len(), limit.min(basis.len()));
    let dd = d.get() as usize;
    for (i, v) in basis.iter().take(limit).enumerate() {
        let exps: Vec<String> = roots(&v.eigenvalues)
            .iter()
            .map(|k| k.map_or("?".into(), |k| k.to_string()))
            .collect();
        let terms: Vec<String> = v
            .state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > tol)
            .map(|(k, &a)| format!("({}){}", complex_text(a), ket(k, dd, t.parties())))
            .collect();
        let _ = writeln!(out, "#{i} ω-exponents [{}]: {}", exps.join(" "), terms.join(" + "));
    }
    print!("{out}");
    Ok(())
}

/// Parses `v1;v2;…` with comma-separated complex entries such as `1`, `-i`
/// or `0.5+0.5i`.
pub fn parse_span(s: &str) -> Result<Vec<Vec<C64>>, Failure> {
    s.split(';')
        .map(|v| {
            v.split(',')
                .map(|c| {
                    let c = c.trim();
                    let c = match c {
                        "i" | "+i" => "1i",
                        "-i" => "-1i",
                        other => other,
                    };
                    c.parse::<C64>()
                        .map_err(|_| Failure::Input(format!("bad complex number `{c}` in span `{s}`")))
                })
                .collect()
        })
        .collect()
}

pub fn cmd_project(spec: &str, spans: &[String], as_json: bool, cfg: &OracleConfig) -> CmdResult {
    let (t, _) = load_table(spec)?;
    let parsed = spans.iter().map(|s| parse_span(s)).collect::<Result<Vec<_>, _>>()?;
    let projectors = match parsed.len() {
        1 => vec![parsed[0].clone(); t.parties()],
        n if n == t.parties() => parsed,
        n => {
            return Err(Failure::Input(format!(
                "give one --span for all parties or one per party ({} parties, got {n})",
                t.parties()
            )))
        }
    };
    let pv = project_and_verify(&t, &projectors, cfg)?;
    let mut r = Report {
        text: render_table(&t),
        json: serde_json::Map::new(),
        ok: pv.verdict.is_paradox,
    };
    r.field("projection", json!(pv));
    r.line(format!("subspace ranks:   {:?}", pv.ranks));
    r.line(format!("invariant:        {}", yes(pv.invariant)));
    r.line(format!("unitary:          {}", yes(pv.unitary)));
    r.line(format!("commuting:        {}", yes(pv.verdict.commuting)));
    r.line(format!("product:          {}", phase_text(pv.verdict.quantum_phase, t.dim())));
    r.line(format!("paradox on subspace: {}", yes(pv.verdict.is_paradox)));
    r.finish(as_json)
}

pub fn result_line(r: &SearchResult) -> String {
    let t = &r.table;
    let what = match &r.params {
        Some(p) => p.to_string(),
        None => {
            let rows: Vec<String> = t
                .rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            format!("{} [{}]", t.label, rows.join(" | "))
        }
    };
    let flags = if !r.verdict.is_paradox {
        let violated: Vec<&str> = r
            .check
            .iter()
            .flat_map(|c| c.violated.iter().map(|v| v.name()))
            .collect();
        format!("not a paradox ({})", violated.join(", "))
    } else {
        format!(
            "paradox, product {}, multipartite {}, dimensional {}",
            phase_text(r.verdict.quantum_phase, t.dim()),
            yes(r.genuine_multipartite == Some(true)),
            yes(r.dimension.genuine)
        )
    };
    format!("{what}: {} rows, {flags}", t.len())
}

pub fn search_summary(results: &[SearchResult], tally: &ConjectureReport, spec: &SearchSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "results: {}", results.len());
    let _ = writeln!(out, "paradoxes: {}, genuine: {}", tally.paradoxes, tally.genuine);
    for (d, (p, g)) in &tally.per_dimension {
        let _ = writeln!(out, "  d={d}: {p} paradoxes, {g} genuine");
    }
    let _ = writeln!(
        out,
        "conjecture (genuine ⇒ d even and d < M): {} satisfying, {} counterexamples",
        tally.satisfying,
        tally.counterexamples.len()
    );
    for c in &tally.counterexamples {
        let _ = writeln!(out, "  counterexample: {}", result_line(c));
    }
    let _ = writeln!(out, "{}", tally.conclusion);
    if !spec.dedupe {
        let _ = writeln!(out, "(duplicates up to party and row order kept)");
    }
    out
}
