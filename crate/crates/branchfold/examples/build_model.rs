//! Builds the genus-g branched surface and prints its structure: sections
//! with their genus and ports, then branch curves with their allowed
//! pairings. The same data serializes to a model file for the CLI.

use branchfold::models::build_rg;
use branchfold::serialize_model;

fn main() {
    let g = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let model = build_rg(g).expect("genus must be at least 1");
    let bs = &model.surface;

    println!("model {}: {} sections, {} branch curves", bs.name, bs.sections().len(), bs.curves().len());
    for s in bs.sections() {
        let ports: Vec<&str> = s.ports.iter().map(|p| bs.port(*p).name.as_str()).collect();
        println!("  section {:3} genus {}  ports [{}]", s.name, s.genus, ports.join(", "));
    }
    for c in bs.curves() {
        println!("  curve {:4} joins {} ports, {} allowed pairings", c.name, c.incident.len(), c.pairs.len());
    }

    println!("\nserialized model:\n");
    print!("{}", serialize_model(bs));
}
