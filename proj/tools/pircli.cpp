// Copyright 2026 The codedpir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <unistd.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pir/array_code.hpp"
#include "pir/bounds.hpp"
#include "pir/constructions.hpp"
#include "pir/coset.hpp"
#include "pir/emulate.hpp"
#include "pir/oracle.hpp"
#include "pir/service.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pir::ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pir::ParseError("cannot write " + path);
    out << text;
}

pir::PirCode build_code(const std::string& family, unsigned sigma, unsigned k,
                        unsigned n, unsigned q, unsigned r, unsigned s) {
    using namespace pir;
    if (family == "cubic") return cubic_code(sigma, k, s);
    if (family == "steiner-column")
        return steiner_code(steiner_triple(n), SteinerOrientation::kColumn);
    if (family == "steiner-row")
        return steiner_code(steiner_triple(n), SteinerOrientation::kRow);
    if (family == "pg-column")
        return steiner_code(projective_plane(q), SteinerOrientation::kColumn);
    if (family == "constant-weight") return constant_weight_code(r, k);
    if (family == "ml15-7") return majority_logic_15_7();
    if (family == "balanced") return balanced_multiplicity_code(s, k);
    if (family == "example2") return example2_code();
    throw DomainError("unknown family: " + family);
}

std::vector<pir::Elem> random_bits(size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<pir::Elem> v(n);
    for (auto& b : v) b = pir::Elem(rng() & 1);
    return v;
}

void print_trace(const pir::PirCode& code, size_t part) {
    // symbolic walkthrough of one emulated retrieval (identity permutation)
    const auto& sets = code.witnesses[part];
    std::cout << "server | query | response\n";
    std::cout << "-------+-------+---------------------------------------------\n";
    size_t k = code.k;
    auto col_formula = [&](size_t h) {
        std::string out;
        for (size_t rI = 0; rI < code.s; ++rI)
            if (code.g.at(rI, h)) {
                if (!out.empty()) out += "+";
                out += "x" + std::to_string(rI + 1);
            }
        return out;
    };
    for (size_t j = 0; j < k; ++j)
        for (auto [h, coef] : sets[j].members) {
            std::cout << "  " << (h + 1) << "    |  q" << (j + 1) << "   | a"
                      << (h + 1) << " = A(" << k << "," << (j + 1) << ","
                      << col_formula(h) << ",q" << (j + 1) << ")\n";
        }
    for (size_t j = 0; j < k; ++j) {
        std::ostringstream combo;
        bool first = true;
        for (auto [h, coef] : sets[j].members) {
            combo << (first ? "" : " + ") << "a" << (h + 1);
            first = false;
        }
        std::cout << "a'" << (j + 1) << " = " << combo.str() << " = A(" << k << ","
                  << (j + 1) << ",x" << (part + 1) << ",q" << (j + 1) << ")\n";
    }
    std::cout << "x_" << (part + 1) << ",i = C(" << k << ",n/" << code.s << ";i";
    for (size_t j = 0; j < k; ++j) std::cout << ",a'" << (j + 1);
    std::cout << ")\n";
}

int run(int argc, char** argv) {
    using namespace pir;
    CLI::App app{"coded private information retrieval toolkit"};
    app.require_subcommand(1);

    // ---- code ----
    auto* code_cmd = app.add_subcommand("code", "build, verify and probe PIR codes");
    code_cmd->require_subcommand(1);
    std::string family = "cubic", code_path, out_path = "-", matrix_out;
    unsigned arg_sigma = 2, arg_k = 3, arg_n = 7, arg_q = 2, arg_r = 5, arg_s = 0;
    size_t arg_i = 0;

    auto* build = code_cmd->add_subcommand("build", "construct a PIR code");
    build->add_option("--family", family,
                      "cubic|steiner-column|steiner-row|pg-column|constant-weight|"
                      "ml15-7|balanced|example2");
    build->add_option("--sigma", arg_sigma, "cubic side length");
    build->add_option("--k", arg_k, "server count");
    build->add_option("--n", arg_n, "Steiner point count");
    build->add_option("--q", arg_q, "projective plane order");
    build->add_option("--r", arg_r, "constant-weight length");
    build->add_option("--s", arg_s, "message length (balanced / truncated cubic)");
    build->add_option("-o,--out", out_path, "output JSON path");
    build->callback([&] {
        PirCode code = build_code(family, arg_sigma, arg_k, arg_n, arg_q, arg_r, arg_s);
        spit(out_path, pir_code_to_json(code) + "\n");
        std::cerr << "[" << code.m << "," << code.s << "] " << code.k
                  << "-server PIR code, overhead " << code.overhead() << "\n";
    });

    auto* verify_cmd = code_cmd->add_subcommand("verify", "check the certificate");
    verify_cmd->add_option("-f,--file", code_path, "PirCode JSON")->required();
    verify_cmd->callback([&] {
        PirCode code = pir_code_from_json(slurp(code_path));
        VerifyReport rep = verify(code);
        if (!rep.ok) throw DomainError("verification failed: " + rep.reason);
        std::cout << "ok: [" << code.m << "," << code.s << "] verifies at k=" << code.k
                  << "\n";
        if (code.s <= 24 && code.field.q() == 2) {
            size_t d = min_distance(code.g);
            std::cout << "min_distance = " << d << (d >= code.k ? " (>= k)" : " (< k!)")
                      << "\n";
        }
    });

    auto* oracle_cmd = code_cmd->add_subcommand("oracle", "exhaustive max-k search");
    oracle_cmd->add_option("-f,--file", code_path, "PirCode JSON")->required();
    oracle_cmd->add_option("-i,--index", arg_i, "message index (0-based)");
    oracle_cmd->callback([&] {
        PirCode code = pir_code_from_json(slurp(code_path));
        OracleResult res = max_pir_k(code.g, arg_i);
        std::cout << res.k_max << "\n";
    });

    auto* export_cmd = code_cmd->add_subcommand("export", "emit the generator matrix");
    export_cmd->add_option("-f,--file", code_path, "PirCode JSON")->required();
    export_cmd->add_option("-o,--out", matrix_out, "matrix text output");
    export_cmd->callback([&] {
        PirCode code = pir_code_from_json(slurp(code_path));
        spit(matrix_out.empty() ? "-" : matrix_out, to_text(code.g));
    });

    auto* import_cmd = code_cmd->add_subcommand(
        "import", "certify a bare generator matrix through the oracle");
    import_cmd->add_option("--matrix", matrix_out, "matrix text input")->required();
    import_cmd->add_option("-o,--out", out_path, "output JSON path");
    import_cmd->callback([&] {
        Matrix g = matrix_from_text(slurp(matrix_out));
        size_t k = SIZE_MAX;
        std::vector<std::vector<RecoverySet>> wits(g.rows());
        for (size_t i = 0; i < g.rows(); ++i) {
            OracleResult res = max_pir_k(g, i);
            if (res.k_max == 0)
                throw DomainError("matrix is not a PIR code: bit " + std::to_string(i) +
                                  " is unrecoverable");
            wits[i] = res.witnesses;
            k = std::min(k, res.k_max);
        }
        for (auto& sets : wits) sets.resize(k);
        PirCode code = make_pir_code(g.field(), g, std::move(wits), "code import");
        spit(out_path, pir_code_to_json(code) + "\n");
        std::cerr << "[" << code.m << "," << code.s << "] certified at k=" << code.k
                  << "\n";
    });

    // ---- bounds ----
    auto* bounds_cmd = app.add_subcommand("bounds", "A(s,k) closure and bounds");
    bounds_cmd->require_subcommand(1);
    size_t smax = 32, kmax = 16, cell_s = 3, cell_k = 8;
    auto* table_cmd = bounds_cmd->add_subcommand("table", "CSV of the closure");
    table_cmd->add_option("--smax", smax, "max message length");
    table_cmd->add_option("--kmax", kmax, "max server count");
    table_cmd->add_option("-o,--out", out_path, "output path");
    table_cmd->callback([&] {
        BoundsTable table(smax, kmax);
        spit(out_path, table.to_csv());
    });
    auto* cell_cmd = bounds_cmd->add_subcommand("cell", "one closure cell");
    cell_cmd->add_option("-s", cell_s, "message length")->required();
    cell_cmd->add_option("-k", cell_k, "server count")->required();
    cell_cmd->callback([&] {
        BoundsTable table(std::max<size_t>(cell_s, 4), std::max<size_t>(cell_k, 2));
        const BoundsCell& c = table.cell(cell_s, cell_k);
        std::cout << "lower=" << c.lower << " upper=" << c.upper
                  << " provenance=" << table.provenance_string(cell_s, cell_k) << "\n";
    });

    // ---- protocol ----
    auto* proto_cmd = app.add_subcommand("protocol", "base-protocol self tests");
    auto* audit_cmd = proto_cmd->add_subcommand("audit", "linearity + privacy audits");
    std::string proto_name = "xork";
    size_t audit_k = 3, audit_n = 6, audit_j = 0, audit_i1 = 0, audit_i2 = 1;
    bool exact = true;
    audit_cmd->add_option("--name", proto_name, "xor2|xork");
    audit_cmd->add_option("--k", audit_k, "server count (xork)");
    audit_cmd->add_option("--n", audit_n, "database length");
    audit_cmd->add_option("--server", audit_j, "audited server");
    audit_cmd->add_option("--i1", audit_i1, "first index");
    audit_cmd->add_option("--i2", audit_i2, "second index");
    audit_cmd->add_flag("--exact,!--sampled", exact, "exact enumeration (default)");
    audit_cmd->callback([&] {
        XorProtocol p = proto_name == "xor2" ? xor2() : xork(audit_k);
        SelfTestReport lin = linearity_selftest(p, audit_n, 2000);
        std::cout << "linearity: " << (lin.pass ? "pass" : "FAIL " + lin.detail) << "\n";
        AuditVerdict v = privacy_audit(p, audit_j, audit_n, audit_i1, audit_i2,
                                       exact ? AuditMode::kExact : AuditMode::kSampled);
        std::cout << "privacy(server " << audit_j << ", i1=" << audit_i1
                  << ", i2=" << audit_i2 << "): "
                  << (v.identical ? "identical" : "DIFFERENT") << " (" << v.detail
                  << ")\n";
        if (!lin.pass || !v.identical) throw DomainError("protocol audit failed");
    });

    // ---- emulate ----
    auto* emu_cmd = app.add_subcommand("emulate", "run coded retrievals in memory");
    emu_cmd->require_subcommand(1);
    size_t emu_n = 32, emu_i = 0;
    std::uint64_t seed = 7;
    std::string fail_list;
    auto* run_cmd = emu_cmd->add_subcommand("run", "encode a random database, retrieve");
    run_cmd->add_option("-f,--file", code_path, "PirCode JSON")->required();
    run_cmd->add_option("--n", emu_n, "database bits");
    run_cmd->add_option("-i,--index", emu_i, "bit to retrieve");
    run_cmd->add_option("--seed", seed, "PRNG seed");
    run_cmd->add_option("--fail", fail_list, "comma-separated failed servers (robust)");
    run_cmd->callback([&] {
        PirCode code = pir_code_from_json(slurp(code_path));
        Database db = Database::from_symbols(code.field, random_bits(emu_n, seed), code.s);
        CodedStore store = distribute(db, code);
        XorProtocol p(code.field, code.k);
        RandomTape tape(code.field, seed + 1);
        std::mt19937_64 rng(seed + 2);
        std::set<size_t> failed;
        if (!fail_list.empty()) {
            std::istringstream ss(fail_list);
            std::string tok;
            while (std::getline(ss, tok, ',')) failed.insert(std::stoul(tok));
        }
        if (failed.size() + 2 > code.k && !failed.empty())
            throw DomainError("too many failed servers for a k=" +
                              std::to_string(code.k) + " certificate");
        auto [bit, session] = failed.empty()
                                  ? retrieve(store, p, emu_i, tape, rng)
                                  : retrieve_robust(store, XorProtocol(code.field, code.k - failed.size()),
                                                    emu_i, failed, tape, rng);
        Elem truth = emu_i < db.padded_n() ? db.content[emu_i] : 0;
        std::cout << "x[" << emu_i << "] = " << unsigned(bit)
                  << (bit == truth ? " (correct)" : " (WRONG)") << "\n";
        std::cout << "uploaded " << session.uploaded_bits << " bits, downloaded "
                  << session.downloaded_bits << " bits, " << session.servers_contacted
                  << " servers\n";
        if (bit != truth) throw DomainError("retrieval returned the wrong bit");
    });
    bool example2 = false;
    size_t trace_part = 1;
    auto* trace_cmd = emu_cmd->add_subcommand("trace", "symbolic retrieval walkthrough");
    trace_cmd->add_flag("--example2", example2, "use the [8,4,3] walkthrough code");
    trace_cmd->add_option("-f,--file", code_path, "PirCode JSON (if not --example2)");
    trace_cmd->add_option("--part", trace_part, "1-based database part");
    trace_cmd->callback([&] {
        PirCode code = example2 ? example2_code() : pir_code_from_json(slurp(code_path));
        if (trace_part < 1 || trace_part > code.s)
            throw DomainError("part out of range");
        print_trace(code, trace_part - 1);
    });

    // ---- array ----
    auto* array_cmd = app.add_subcommand("array", "PIR array codes");
    array_cmd->require_subcommand(1);
    unsigned arr_t = 2;
    auto* abuild = array_cmd->add_subcommand("build", "construct the t-family code");
    abuild->add_option("--t", arr_t, "per-server symbol count (2 or 3)");
    abuild->add_option("-o,--out", out_path, "output JSON path");
    abuild->callback([&] {
        ArrayCode code = apir(arr_t);
        spit(out_path, array_code_to_json(code) + "\n");
        std::cerr << "[" << code.m1 << "x" << code.m2 << "," << code.s_total << "] "
                  << code.k << "-server PIR array code, overhead " << code.overhead()
                  << "\n";
    });
    auto* averify = array_cmd->add_subcommand("verify", "check the witnesses");
    averify->add_option("-f,--file", code_path, "ArrayCode JSON")->required();
    averify->callback([&] {
        ArrayCode code = array_code_from_json(slurp(code_path));
        auto rep = array_verify(code);
        if (!rep.ok) throw DomainError("array verify failed: " + rep.reason);
        std::cout << "ok: k = " << code.k << " for all " << code.s_total << " bits\n";
    });
    auto* aget = array_cmd->add_subcommand("get", "retrieve one bit over the array");
    aget->add_option("-f,--file", code_path, "ArrayCode JSON")->required();
    aget->add_option("--n", emu_n, "database bits");
    aget->add_option("-i,--index", emu_i, "bit to retrieve");
    aget->add_option("--seed", seed, "PRNG seed");
    aget->callback([&] {
        ArrayCode code = array_code_from_json(slurp(code_path));
        Database db =
            Database::from_symbols(Field::gf2(), random_bits(emu_n, seed), code.s_total);
        ArrayStore store = array_distribute(db, code);
        XorProtocol p(Field::gf2(), code.k);
        RandomTape tape(Field::gf2(), seed + 1);
        std::mt19937_64 rng(seed + 2);
        auto [bit, session] = array_retrieve(store, p, emu_i, tape, rng);
        Elem truth = db.content[emu_i];
        std::cout << "x[" << emu_i << "] = " << unsigned(bit)
                  << (bit == truth ? " (correct)" : " (WRONG)") << "\n";
        if (bit != truth) throw DomainError("array retrieval returned the wrong bit");
    });

    // ---- serve / get ----
    auto* serve_cmd = app.add_subcommand("serve", "run one storage daemon");
    std::uint16_t port = 0;
    size_t srv_index = 0, srv_k = 3;
    unsigned srv_q = 2;
    serve_cmd->add_option("--port", port, "TCP port (0 = ephemeral)");
    serve_cmd->add_option("--index", srv_index, "server index in [m]");
    serve_cmd->add_option("--k", srv_k, "base protocol k");
    serve_cmd->add_option("--q", srv_q, "field order");
    serve_cmd->callback([&] {
        ServerConfig cfg{Field::of_order(srv_q), srv_k, srv_index};
        PirServer server(cfg);
        TcpServer daemon(server, port);
        std::cout << "listening on 127.0.0.1:" << daemon.port() << " (server "
                  << srv_index << ", k=" << srv_k << ", GF(" << srv_q << "))\n"
                  << std::flush;
        pause();  // run until interrupted
    });

    auto* get_cmd = app.add_subcommand("get", "retrieve over TCP endpoints");
    std::string config_path;
    bool robust = false;
    get_cmd->add_option("--config", config_path, "JSON config")->required();
    get_cmd->add_option("-i,--index", emu_i, "bit to retrieve");
    get_cmd->add_option("--n", emu_n, "database bits");
    get_cmd->add_flag("--robust", robust, "tolerate unreachable endpoints");
    get_cmd->callback([&] {
        nlohmann::json cfg = nlohmann::json::parse(slurp(config_path));
        PirCode code = pir_code_from_json(slurp(cfg.at("code").get<std::string>()));
        std::uint64_t sd = cfg.value("seed", 7);
        size_t k = cfg.at("protocol").at("k").get<size_t>();
        XorProtocol p(code.field, k);
        Database db = Database::from_symbols(code.field, random_bits(emu_n, sd), code.s);
        CodedStore store = distribute(db, code);
        std::vector<std::unique_ptr<TcpClientTransport>> owned;
        std::vector<Transport*> links;
        for (const auto& ep : cfg.at("servers")) {
            std::string addr = ep.get<std::string>();
            auto colon = addr.rfind(':');
            try {
                owned.push_back(std::make_unique<TcpClientTransport>(
                    addr.substr(0, colon),
                    std::uint16_t(std::stoul(addr.substr(colon + 1)))));
                links.push_back(owned.back().get());
            } catch (const TransportError&) {
                if (!robust) throw;
                owned.push_back(nullptr);
                links.push_back(nullptr);
            }
        }
        client_store(links, store, 0, robust);
        RandomTape tape(code.field, sd + 1);
        std::mt19937_64 rng(sd + 2);
        ClientResult res =
            client_retrieve(links, code, p, store.part_len, emu_i, tape, rng, robust);
        Elem truth = emu_i < db.padded_n() ? db.content[emu_i] : 0;
        std::cout << "x[" << emu_i << "] = " << unsigned(res.value)
                  << (res.value == truth ? " (correct)" : " (WRONG)") << "\n";
        std::cout << "payload: up " << res.acct.payload_up_bits << " bits, down "
                  << res.acct.payload_down_bits << " bits; raw " << res.acct.raw_up_bytes
                  << "/" << res.acct.raw_down_bytes << " bytes\n";
        if (res.value != truth) throw DomainError("retrieval returned the wrong bit");
    });

    // ---- bench ----
    auto* bench_cmd = app.add_subcommand("bench", "storage/communication sweep (CSV)");
    size_t bench_n = 64;
    bench_cmd->add_option("--n", bench_n, "database bits");
    bench_cmd->add_option("-o,--out", out_path, "output path");
    bench_cmd->callback([&] {
        std::ostringstream os;
        os << "family,s,k,m,overhead,n,part_len,upload_bits,download_bits,measured_up,"
              "measured_down\n";
        struct Entry {
            std::string family;
            PirCode code;
        };
        std::vector<Entry> entries;
        entries.push_back({"example2", example2_code()});
        entries.push_back({"cubic(3,3)", cubic_code(3, 3)});
        entries.push_back({"balanced(3,8)", balanced_multiplicity_code(3, 8)});
        entries.push_back({"steiner-col(7)",
                           steiner_code(steiner_triple(7), SteinerOrientation::kColumn)});
        entries.push_back({"constweight(5,3)", constant_weight_code(5, 3)});
        entries.push_back({"ml15-7", majority_logic_15_7()});
        for (const auto& e : entries) {
            const PirCode& code = e.code;
            size_t n = bench_n - bench_n % code.s;
            if (n == 0) n = code.s;
            Database db = Database::from_symbols(code.field, random_bits(n, 3), code.s);
            CodedStore store = distribute(db, code);
            XorProtocol p(code.field, code.k);
            RandomTape tape(code.field, 11);
            std::mt19937_64 rng(13);
            auto [bit, session] = retrieve(store, p, 0, tape, rng);
            (void)bit;
            std::string detail;
            if (!accounting_check(session, p, code.m, store.part_len, &detail))
                throw DomainError("bench: accounting mismatch for " + e.family + ": " +
                                  detail);
            os << e.family << ',' << code.s << ',' << code.k << ',' << code.m << ','
               << code.overhead() << ',' << n << ',' << store.part_len << ','
               << code.m * p.upload_bits(store.part_len) << ','
               << code.m * p.download_bits() << ',' << session.uploaded_bits << ','
               << session.downloaded_bits << '\n';
        }
        spit(out_path, os.str());
    });

    // ---- ledger ----
    auto* ledger_cmd = app.add_subcommand("ledger", "reference-data discrepancy report");
    ledger_cmd->callback([&] { std::cout << discrepancy_report(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const pir::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
