// qdos: synthesize, render, verify and simulate small quantum circuits.
// Exit codes: 0 ok, 2 parse/usage error, 3 residual above tolerance,
// 4 diagram size limit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdos/circuit.hpp"
#include "qdos/complex_matrix.hpp"
#include "qdos/diagram.hpp"
#include "qdos/json_io.hpp"
#include "qdos/random.hpp"
#include "qdos/render.hpp"
#include "qdos/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitResidual = 3;
constexpr int kExitSize = 4;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw qdos::ParseError("cannot write " + path);
    out << text;
}

qdos::ComplexMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qdos::ParseError("cannot open " + path);
    try {
        return qdos::read_matrix_text(in);
    } catch (const std::invalid_argument& e) {
        throw qdos::ParseError(std::string(e.what()) + " in " + path);
    }
}

std::string cert_json(const qdos::SynthesisResult& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "{\"residual\": %.17g, \"global_phase\": %.17g}\n",
                  r.residual, r.global_phase);
    return buf;
}

std::string amps_json(const qdos::StateVector& s) {
    std::ostringstream os;
    char buf[96];
    os << "{\"n_qubits\": " << s.n_qubits() << ", \"amps\": [";
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s[%.15g, %.15g]", i ? ", " : "", s[i].real(),
                      s[i].imag());
        os << buf;
    }
    os << "]}\n";
    return os.str();
}

struct SynthArgs {
    std::string kind;
    double alpha = 0.0, delta = 0.0, gamma = 0.0;
    int n = 2;
    std::string phis_csv;
    std::string matrix_file;
    std::string amps_file;
    bool random = false;
    unsigned seed = 0;
    bool degrees = false;
    double tol = 1e-9;
    std::string out, cert;
    bool human = false;
};

std::vector<double> parse_csv(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw qdos::ParseError("invalid number in list: " + tok);
        }
        if (pos != tok.size()) throw qdos::ParseError("invalid number in list: " + tok);
        out.push_back(v);
    }
    return out;
}

int run_synth(const SynthArgs& a) {
    const double scale = a.degrees ? qdos::kPi / 180.0 : 1.0;
    std::mt19937 rng(a.seed);

    auto matrix_input = [&](std::size_t dim) {
        if (a.random) return qdos::random_unitary(dim, rng);
        if (a.matrix_file.empty())
            throw qdos::ParseError("need --matrix FILE or --random for this kind");
        qdos::ComplexMatrix m = load_matrix(a.matrix_file);
        if (m.dim() != dim) throw qdos::ParseError("matrix has wrong dimension");
        return m;
    };

    qdos::SynthesisResult r;
    try {
        if (a.kind == "su2") {
            r = qdos::su2_from_euler(
                {scale * a.alpha, scale * a.delta, scale * a.gamma});
        } else if (a.kind == "cphase") {
            r = qdos::synth_cphase(scale * a.delta);
        } else if (a.kind == "c2phase") {
            r = qdos::synth_c2phase(scale * a.delta);
        } else if (a.kind == "csu2") {
            qdos::ComplexMatrix m = matrix_input(2);
            if (a.random) {
                // Strip the determinant phase so the draw is special unitary.
                const qdos::Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
                const qdos::Complex f = std::polar(1.0, -std::arg(det) / 2.0);
                for (std::size_t i = 0; i < 2; ++i)
                    for (std::size_t j = 0; j < 2; ++j) m(i, j) *= f;
            }
            r = qdos::synth_csu2(m);
        } else if (a.kind == "cu") {
            r = qdos::synth_cu(matrix_input(2));
        } else if (a.kind == "c2u") {
            r = qdos::synth_c2u(matrix_input(2));
        } else if (a.kind == "u4") {
            r = qdos::synth_2q_unitary(matrix_input(4));
        } else if (a.kind == "diag") {
            std::vector<double> phis = parse_csv(a.phis_csv);
            for (double& p : phis) p *= scale;
            r = qdos::synth_diag(qdos::DiagonalPhases(a.n, std::move(phis)));
        } else if (a.kind == "state") {
            qdos::StateVector target;
            int n = a.n;
            if (a.random) {
                target = qdos::random_state(n, rng);
            } else {
                if (a.amps_file.empty())
                    throw qdos::ParseError("need --amps FILE or --random for state synthesis");
                target = qdos::state_from_json(qdos::load_json_file(a.amps_file));
                n = target.n_qubits();
            }
            r = qdos::synth_state(target, n);
        } else {
            throw qdos::ParseError("unknown synthesis kind: " + a.kind);
        }
    } catch (const std::domain_error& e) {
        throw qdos::ParseError(e.what());
    } catch (const std::invalid_argument& e) {
        throw qdos::ParseError(e.what());
    }

    write_text(a.out, qdos::circuit_to_json(r.circuit).dump(2) + "\n");
    if (a.human) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: %zu ops, residual %.3g, global phase %.6g\n",
                      a.kind.c_str(), r.circuit.ops.size(), r.residual, r.global_phase);
        write_text(a.cert, buf);
    } else {
        write_text(a.cert, cert_json(r));
    }
    return r.residual <= a.tol ? kExitOk : kExitResidual;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gate synthesis and diagrams of states"};
    app.require_subcommand(1);

    SynthArgs sa;
    CLI::App* synth = app.add_subcommand("synth", "synthesize a circuit for a target");
    synth->add_option("kind", sa.kind, "su2|cphase|csu2|cu|c2u|c2phase|u4|diag|state")
        ->required();
    synth->add_option("--alpha", sa.alpha, "Euler angle alpha");
    synth->add_option("--delta", sa.delta, "phase angle delta / Euler delta");
    synth->add_option("--gamma", sa.gamma, "Euler angle gamma");
    synth->add_option("--n", sa.n, "qubit count for diag/state/random (2 or 3)");
    synth->add_option("--phis", sa.phis_csv, "comma-separated target phases for diag");
    synth->add_option("--matrix", sa.matrix_file, "target matrix, matrix text format");
    synth->add_option("--amps", sa.amps_file, "target state JSON for state synthesis");
    synth->add_flag("--random", sa.random, "draw a random target instead of reading one");
    synth->add_option("--seed", sa.seed, "RNG seed for --random");
    synth->add_flag("--degrees", sa.degrees, "interpret angles as degrees");
    synth->add_option("--tol", sa.tol, "residual bound for exit code 0");
    synth->add_option("--out", sa.out, "circuit JSON output path (default stdout)");
    synth->add_option("--cert", sa.cert, "certificate output path (default stdout)");
    synth->add_flag("--human", sa.human, "human-readable certificate");

    std::string circuit_file, format = "svg", out_path;
    bool simplified = false;
    int input_state = -1;
    CLI::App* render = app.add_subcommand("render", "render a circuit as a diagram of states");
    render->add_option("circuit", circuit_file, "circuit JSON file")->required();
    render->add_option("--format", format, "svg or ascii");
    render->add_flag("--simplified", simplified, "simplify the diagram first");
    render->add_option("--input-state", input_state, "basis index for flow marking");
    render->add_option("--out", out_path, "output path (default stdout)");

    std::string v_circuit, v_target, v_target_state;
    double v_tol = 1e-9;
    bool v_human = false;
    CLI::App* verify = app.add_subcommand("verify", "check a circuit against a target");
    verify->add_option("circuit", v_circuit, "circuit JSON file")->required();
    verify->add_option("--target", v_target, "target matrix, matrix text format");
    verify->add_option("--target-state", v_target_state, "target state JSON (from |0...0>)");
    verify->add_option("--tol", v_tol, "residual bound for exit code 0");
    verify->add_flag("--human", v_human, "human-readable output");

    std::string s_circuit, s_state_file;
    int s_input = 0;
    CLI::App* simulate = app.add_subcommand("simulate", "run a circuit on an input state");
    simulate->add_option("circuit", s_circuit, "circuit JSON file")->required();
    simulate->add_option("--input", s_input, "input basis index (default 0)");
    simulate->add_option("--input-state", s_state_file, "input state JSON file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return run_synth(sa);

        if (render->parsed()) {
            const qdos::Circuit c = qdos::circuit_from_json(qdos::load_json_file(circuit_file));
            qdos::Diagram d = qdos::build_complete_diagram(c);
            if (input_state >= 0) d = qdos::mark_information_flow(d, input_state);
            if (simplified) d = qdos::simplify_diagram(d);
            qdos::RenderStyle st;
            if (format == "svg") st.format = qdos::RenderFormat::SVG;
            else if (format == "ascii") st.format = qdos::RenderFormat::ASCII;
            else throw qdos::ParseError("format must be svg or ascii");
            write_text(out_path, qdos::render(d, st));
            return kExitOk;
        }

        if (verify->parsed()) {
            const qdos::Circuit c = qdos::circuit_from_json(qdos::load_json_file(v_circuit));
            qdos::PhaseMatch pm;
            if (!v_target.empty()) {
                const qdos::ComplexMatrix target = load_matrix(v_target);
                if (target.dim() != (std::size_t{1} << c.n_qubits))
                    throw qdos::ParseError("target dimension does not match circuit");
                pm = qdos::equal_up_to_global_phase(qdos::circuit_to_unitary(c), target, v_tol);
            } else if (!v_target_state.empty()) {
                const qdos::StateVector target =
                    qdos::state_from_json(qdos::load_json_file(v_target_state));
                if (target.n_qubits() != c.n_qubits)
                    throw qdos::ParseError("target state size does not match circuit");
                pm = qdos::equal_up_to_global_phase(qdos::simulate(c), target, v_tol);
            } else {
                throw qdos::ParseError("need --target or --target-state");
            }
            char buf[160];
            if (v_human)
                std::snprintf(buf, sizeof buf, "residual %.3g, global phase %.6g: %s\n",
                              pm.residual, pm.phase, pm.equal ? "ok" : "MISMATCH");
            else
                std::snprintf(buf, sizeof buf,
                              "{\"residual\": %.17g, \"global_phase\": %.17g}\n", pm.residual,
                              pm.phase);
            std::cout << buf;
            return pm.equal ? kExitOk : kExitResidual;
        }

        if (simulate->parsed()) {
            const qdos::Circuit c = qdos::circuit_from_json(qdos::load_json_file(s_circuit));
            qdos::StateVector in;
            if (!s_state_file.empty()) {
                in = qdos::state_from_json(qdos::load_json_file(s_state_file));
                if (in.n_qubits() != c.n_qubits)
                    throw qdos::ParseError("input state size does not match circuit");
            } else {
                if (s_input < 0 || (std::size_t)s_input >= (std::size_t{1} << c.n_qubits))
                    throw qdos::ParseError("input basis index out of range");
                in = qdos::StateVector::basis(c.n_qubits, s_input);
            }
            std::cout << amps_json(qdos::simulate(c, in));
            return kExitOk;
        }
    } catch (const qdos::SizeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSize;
    } catch (const qdos::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
