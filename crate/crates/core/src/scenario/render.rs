use std::fmt::Write;

use crate::universe::Universe;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Canonical scenario text. Parsing it back under the same name yields an
/// equal universe.
pub fn render_scenario(u: &Universe) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# scenario: {}", u.name);

    if !u.vocab().is_empty() {
        out.push('\n');
    }
    for a in u.vocab().atoms() {
        match &a.description {
            Some(d) => {
                let _ = writeln!(out, "atom {} {}", a.name, quote(d));
            }
            None => {
                let _ = writeln!(out, "atom {}", a.name);
            }
        }
    }

    if !u.specs().is_empty() {
        out.push('\n');
    }
    for s in u.specs() {
        let body: Vec<String> = s.theory.iter().map(|f| f.render()).collect();
        if body.is_empty() {
            let _ = writeln!(out, "spec {} {{ }}", s.name);
        } else {
            let _ = writeln!(out, "spec {} {{ {} }}", s.name, body.join(", "));
        }
        for (k, v) in &s.annotations {
            let _ = writeln!(out, "annotate {} {} = {}", s.name, k, quote(v));
        }
    }

    for p in u.programs() {
        out.push('\n');
        if p.rules.is_empty() {
            let _ = writeln!(out, "program {} {{ }}", p.name);
            continue;
        }
        let _ = writeln!(out, "program {} {{", p.name);
        for r in &p.rules {
            let _ = writeln!(out, "    when {} gives {};", r.guard.render(), r.gives.render());
        }
        out.push_str("}\n");
    }

    if !u.necessary().is_empty() {
        let _ = writeln!(out, "\nnecessary {{ {} }}", u.necessary().join(", "));
    }
    if !u.values().is_empty() {
        out.push('\n');
    }
    for (name, v) in u.values() {
        let _ = writeln!(out, "value {name} = {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    #[test]
    fn empty_universe_renders_header_only() {
        let u = parse_scenario("empty", "").unwrap();
        assert_eq!(render_scenario(&u), "# scenario: empty\n");
    }

    #[test]
    fn round_trip_keeps_everything() {
        let text = r#"
            atom a "with \\ and \" inside"
            atom b
            spec S { a -> b, !(a | b) }
            annotate S simplicity = "one call"
            spec E { }
            program P { when a & b gives a -> b; }
            program NOP { }
            necessary { S }
            value S = 0.125
            value E = 7
        "#;
        let u = parse_scenario("rt", text).unwrap();
        let rendered = render_scenario(&u);
        let again = parse_scenario("rt", &rendered).unwrap();
        assert_eq!(u, again);
        assert_eq!(render_scenario(&again), rendered);
        assert!(rendered.contains("value S = 0.125\nvalue E = 7\n"));
    }
}
