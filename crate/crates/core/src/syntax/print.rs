use super::{Formula, Structure};

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Prop(_) | Formula::Bot | Formula::Top => 5,
        Formula::Prod(..) => 4,
        Formula::And(..) => 3,
        Formula::Or(..) => 2,
        Formula::RImp(..) | Formula::LImp(..) => 1,
    }
}

/// Prints with minimal parentheses; `parse_formula` inverts it exactly.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn write_wrapped(f: &Formula, wrap: bool, out: &mut String) {
    if wrap {
        out.push('(');
        write_formula(f, out);
        out.push(')');
    } else {
        write_formula(f, out);
    }
}

fn write_formula(f: &Formula, out: &mut String) {
    let (a, b, op, level) = match f {
        Formula::Prop(name) => return out.push_str(name),
        Formula::Bot => return out.push_str("bot"),
        Formula::Top => return out.push_str("top"),
        Formula::Prod(a, b) => (a, b, " * ", 4),
        Formula::And(a, b) => (a, b, " & ", 3),
        Formula::Or(a, b) => (a, b, " | ", 2),
        Formula::RImp(a, b) => {
            write_wrapped(a, prec(a) <= 1, out);
            out.push_str(" -> ");
            write_formula(b, out);
            return;
        }
        Formula::LImp(a, b) => {
            write_wrapped(a, matches!(**a, Formula::RImp(..)), out);
            out.push_str(" <- ");
            write_wrapped(b, prec(b) <= 1, out);
            return;
        }
    };
    write_wrapped(a, prec(a) < level, out);
    out.push_str(op);
    write_wrapped(b, prec(b) <= level, out);
}

pub fn print_structure(s: &Structure) -> String {
    let mut out = String::new();
    write_structure(s, &mut out);
    out
}

fn write_structure(s: &Structure, out: &mut String) {
    let (a, b, op) = match s {
        Structure::Leaf(f) => return write_formula(f, out),
        Structure::OProd(a, b) => (a, b, " , "),
        Structure::OMeet(a, b) => (a, b, " ; "),
    };
    for (i, child) in [a, b].into_iter().enumerate() {
        if i == 1 {
            out.push_str(op);
        }
        if child.as_leaf().is_some() {
            write_structure(child, out);
        } else {
            out.push('(');
            write_structure(child, out);
            out.push(')');
        }
    }
}
