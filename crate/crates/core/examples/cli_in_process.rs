//! Drive the command-line interface without spawning a process.

use polyberg::cli::run;

fn main() {
    let calls: [&[&str]; 5] = [
        &["verify", "--field", "fp:3", "t", "t^2-1", "t^2+1"],
        &["decompose", "--field", "q", "4*t^3-2*t", "4*t^4-5*t^2+1", "4*t^4-3*t^2+1"],
        &["reconstruct", "--field", "q", r#"{"c":"1","word":[],"base":"t^2"}"#],
        &["factor", "--format", "text", r#"["-1","2*t","2*t","-2*t","2*t^2-1","2*t^2","-2*t","2*t^2","2*t^2+1"]"#],
        &["verify", "t", "t", "t"],
    ];
    for args in calls {
        let out = run(std::iter::once("polyberg").chain(args.iter().copied()), &mut std::io::empty());
        print!("$ polyberg {}\n{}{}", args.join(" "), out.stdout, out.stderr);
        println!("(exit {})", out.code);
    }
}
