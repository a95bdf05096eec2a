//! The workbench commands as library calls: generate, validate, convert.

use slata::workbench::{cmd_convert, cmd_gen, cmd_validate, Direction, Kind, WorkbenchConfig};

fn main() {
    let config = WorkbenchConfig {
        seed: 4,
        max_size: 6,
        ..WorkbenchConfig::default()
    };
    let ss = cmd_gen(&config, Kind::Slataspace);
    println!("gen slataspace: exit {}", ss.code);
    println!(
        "validate: exit {}",
        cmd_validate(&ss.text, Kind::Slataspace, &config).code
    );

    let rel = cmd_convert(&ss.text, Direction::Q);
    print!("{}", rel.text);
    let again = cmd_convert(&rel.text, Direction::P);
    println!("q then p byte-identical: {}", again.text == ss.text);
}
