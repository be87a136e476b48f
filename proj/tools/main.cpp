// Command-line surface for the level-2 switching library: catalogs,
// enumeration, classification, reducibility, detection, switching, and
// verification as reproducible batch commands.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "l2switch/io.hpp"
#include "l2switch/kneser.hpp"
#include "l2switch/parallel.hpp"
#include "l2switch/switching.hpp"

using namespace l2switch;

namespace {

SwitchingFamily parse_family_or_throw(const std::string& name) {
    auto f = SwitchingFamily::parse(name);
    if (!f) throw usage_error("unknown family: " + name + " (expected gm4, circulant:m, fano, cube)");
    return *f;
}

void emit(const std::string& path, const std::string& content) {
    if (path == "-" || path.empty()) {
        std::cout << content;
        return;
    }
    write_file(path, content);
}

Graph load_graph(const std::string& path) {
    std::string text = read_file(path);
    // edge list files start with "n "; anything else is graph6
    if (text.rfind("n ", 0) == 0) {
        std::istringstream in(text);
        return from_edge_list(in);
    }
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        return from_graph6(line);
    }
    throw parse_error("no graph found in " + path);
}

void check_paper(const std::string& what, uint64_t got, uint64_t expect) {
    if (got != expect)
        throw paper_mismatch_error(what + ": got " + std::to_string(got) + ", reported value is " +
                                   std::to_string(expect));
    std::cout << "paper-check ok: " << what << " = " << expect << "\n";
}

struct EnumerationResult {
    std::vector<SmallGraph> set;
    uint64_t raw_count = 0;
    bool reduced = false;
    std::string method;
};

EnumerationResult enumerate_family(const SwitchingFamily& fam, const std::string& method, int workers) {
    EnumerationResult r;
    bool want_brute = method == "brute";
    bool want_patched = method == "patched";
    if (fam.paired() && !want_brute) {
        auto ps = enumerate_B_patched(fam.pairs());
        r.method = "patched";
        r.raw_count = ps.raw_count();
        if (r.raw_count <= 2'000'000) {
            r.set = ps.materialize();
        } else {
            r.set = ps.reduced;
            r.reduced = true;
        }
        return r;
    }
    if (want_patched && !fam.paired()) throw usage_error("patched enumeration needs a circulant-type family");
    if (fam.size() > 8) throw capacity_error("brute force supports families of size <= 8");
    r.method = "brute";
    r.set = enumerate_B_bruteforce(build_scaled(fam), workers);
    r.raw_count = r.set.size();
    return r;
}

std::vector<EquivalenceClass> classify_family(const SwitchingFamily& fam) {
    auto ctx = EquivalenceContext::make(fam);
    if (fam.paired()) return classes(enumerate_B_patched(fam.pairs()), ctx);
    return classes(enumerate_B_bruteforce(ctx.m2), ctx);
}

int run(int argc, char** argv) {
    CLI::App app{"level-2 graph switching toolkit"};
    app.require_subcommand(1);
    int workers = default_workers();
    app.add_option("--workers", workers, "worker pool size")->check(CLI::PositiveNumber);

    auto* cat = app.add_subcommand("catalog", "print a family matrix (scaled by 2)");
    std::string cat_family, cat_out = "-";
    cat->add_option("family", cat_family)->required();
    cat->add_option("--out", cat_out);

    auto* en = app.add_subcommand("enumerate", "enumerate V_R and B_R");
    std::string en_family, en_method = "auto", en_out;
    bool en_check = false;
    en->add_option("family", en_family)->required();
    en->add_option("--method", en_method)->check(CLI::IsMember({"auto", "brute", "patched"}));
    en->add_option("--out", en_out, "output file prefix (writes <prefix>.v and <prefix>.b)");
    en->add_flag("--check-paper", en_check);

    auto* cl = app.add_subcommand("classify", "equivalence classes of B_R");
    std::string cl_family, cl_in, cl_out = "-";
    bool cl_check = false;
    cl->add_option("family", cl_family, "family name (or use --in)");
    cl->add_option("--in", cl_in, "bset file to classify instead");
    cl->add_option("--out", cl_out);
    cl->add_flag("--check-paper", cl_check);

    auto* rd = app.add_subcommand("reduce", "decide reducibility per class, emit certificates");
    std::string rd_family, rd_out = "-", rd_certs;
    int rd_depth = 6;
    bool rd_check = false;
    rd->add_option("family", rd_family)->required();
    rd->add_option("--depth", rd_depth)->check(CLI::PositiveNumber);
    rd->add_option("--out", rd_out);
    rd->add_option("--certs", rd_certs, "certificate output file");
    rd->add_flag("--check-paper", rd_check);

    auto* vc = app.add_subcommand("verify-certificate", "re-check a certificate file");
    std::string vc_in;
    vc->add_option("file", vc_in)->required();

    auto* fd = app.add_subcommand("find", "find switching instances in a host graph");
    std::string fd_family, fd_in;
    uint64_t fd_limit = 100;
    fd->add_option("family", fd_family)->required();
    fd->add_option("graph", fd_in)->required();
    fd->add_option("--limit", fd_limit);

    auto* sw = app.add_subcommand("switch", "apply a switching at a given set");
    std::string sw_family, sw_in, sw_set, sw_out = "-";
    bool sw_verify = false;
    sw->add_option("family", sw_family)->required();
    sw->add_option("graph", sw_in)->required();
    sw->add_option("--set", sw_set, "comma-separated ordered vertex list")->required();
    sw->add_option("--out", sw_out);
    sw->add_flag("--verify", sw_verify, "also check R-cospectrality");

    auto* vf = app.add_subcommand("verify", "compare characteristic polynomials of two graphs");
    std::string vf_a, vf_b;
    vf->add_option("graph1", vf_a)->required();
    vf->add_option("graph2", vf_b)->required();

    auto* kn = app.add_subcommand("kneser", "emit the 2-Kneser graph K_2(n,k)");
    int kn_n = 4, kn_k = 2;
    bool kn_switch = false;
    std::string kn_out = "-";
    kn->add_option("n", kn_n)->required();
    kn->add_option("k", kn_k)->required();
    kn->add_flag("--switch", kn_switch, "also emit a switched mate via a Fano instance");
    kn->add_option("--out", kn_out);

    auto* pl = app.add_subcommand("plant", "generate a host with a planted switching set");
    std::string pl_family, pl_b, pl_out = "-";
    int pl_outside = 8;
    uint64_t pl_seed = 1;
    pl->add_option("family", pl_family)->required();
    pl->add_option("--b", pl_b, "switching-set adjacency as upper-triangle hex (default: empty)");
    pl->add_option("--outside", pl_outside);
    pl->add_option("--seed", pl_seed);
    pl->add_option("--out", pl_out);

    CLI11_PARSE(app, argc, argv);

    if (cat->parsed()) {
        emit(cat_out, write_catalog(parse_family_or_throw(cat_family)));
        return 0;
    }

    if (en->parsed()) {
        auto fam = parse_family_or_throw(en_family);
        auto vs = enumerate_V(build_scaled(fam));
        auto res = enumerate_family(fam, en_method, workers);
        if (en_check) {
            if (fam.tag == FamilyTag::circulant && fam.m <= 6)
                check_paper("|V_" + fam.name() + "|", vs.members.size(), uint64_t(1) << (fam.m + 1));
            if (fam.tag == FamilyTag::fano) check_paper("|V_fano|", vs.members.size(), 16);
            if (fam.tag == FamilyTag::cube) check_paper("|V_cube|", vs.members.size(), 16);
            if (fam.tag == FamilyTag::circulant && fam.m == 4) check_paper("|B_{R_8}|", res.raw_count, 3584);
            if (fam.tag == FamilyTag::cube) check_paper("|B_cube|", res.raw_count, 1504);
        }
        std::string vtext = write_vset(fam, vs);
        std::string btext = write_bset(fam, res.method, res.set, res.raw_count, res.reduced);
        if (en_out.empty()) {
            std::cout << vtext << btext;
        } else {
            write_file(en_out + ".v", vtext);
            write_file(en_out + ".b", btext);
        }
        return 0;
    }

    if (cl->parsed()) {
        std::vector<EquivalenceClass> cls;
        SwitchingFamily fam = SwitchingFamily::gm4();
        if (!cl_in.empty()) {
            std::istringstream in(read_file(cl_in));
            auto file = read_bset(in);
            fam = file.family;
            auto ctx = EquivalenceContext::make(fam);
            if (file.reduced) {
                PatchedSet ps;
                ps.m = fam.pairs();
                ps.reduced = file.set;
                for (const auto& g : ps.reduced) ps.reduced_index.insert(g.pack());
                cls = classes(ps, ctx);
            } else {
                cls = classes(file.set, ctx);
            }
        } else if (!cl_family.empty()) {
            fam = parse_family_or_throw(cl_family);
            cls = classify_family(fam);
        } else {
            throw usage_error("classify needs a family or --in file");
        }
        if (cl_check && fam.tag == FamilyTag::cube) check_paper("cube classes", cls.size(), 40);
        emit(cl_out, write_classes(fam, cls));
        return 0;
    }

    if (rd->parsed()) {
        auto fam = parse_family_or_throw(rd_family);
        auto cls = classify_family(fam);
        auto results = parallel_map<std::optional<Certificate>>(cls.size(), workers, [&](size_t i) {
            ReductionEngine eng(fam);
            return eng.is_reducible(cls[i].canonical, rd_depth);
        });
        std::vector<Certificate> certs;
        uint64_t irred = 0;
        for (size_t i = 0; i < cls.size(); ++i) {
            cls[i].irreducible = !results[i].has_value();
            if (results[i]) {
                verify_certificate(*results[i]);
                certs.push_back(std::move(*results[i]));
            } else {
                ++irred;
            }
        }
        if (rd_check) {
            if (fam.tag == FamilyTag::circulant && fam.m == 3) check_paper("R_6 irreducible classes", irred, 1);
            if (fam.tag == FamilyTag::circulant && fam.m == 4) check_paper("R_8 irreducible classes", irred, 0);
            if (fam.tag == FamilyTag::circulant && fam.m == 5) check_paper("R_10 irreducible classes", irred, 3);
            if (fam.tag == FamilyTag::circulant && fam.m == 6) check_paper("R_12 irreducible classes", irred, 18);
            if (fam.tag == FamilyTag::fano) check_paper("fano irreducible classes", irred, 2);
            if (fam.tag == FamilyTag::cube) check_paper("cube irreducible classes", irred, 0);
        }
        emit(rd_out, write_classes(fam, cls));
        if (!rd_certs.empty()) {
            std::string text;
            for (const auto& c : certs) text += write_certificate(c);
            write_file(rd_certs, text);
        }
        return 0;
    }

    if (vc->parsed()) {
        std::istringstream in(read_file(vc_in));
        auto certs = read_certificates(in);
        for (const auto& c : certs) verify_certificate(c);
        std::cout << "verified " << certs.size() << " certificate(s): all pass\n";
        return 0;
    }

    if (fd->parsed()) {
        auto fam = parse_family_or_throw(fd_family);
        Graph g = load_graph(fd_in);
        FindLimits lim;
        lim.max_instances = fd_limit;
        auto found = find_switching_sets(g, fam, lim);
        std::cout << "# instances: " << found.size() << "\n";
        for (const auto& inst : found) {
            for (size_t t = 0; t < inst.set_vertices.size(); ++t) {
                if (t) std::cout << " ";
                std::cout << inst.set_vertices[t];
            }
            std::cout << "\n";
        }
        return 0;
    }

    if (sw->parsed()) {
        auto fam = parse_family_or_throw(sw_family);
        Graph g = load_graph(sw_in);
        std::vector<int> verts;
        std::istringstream ls(sw_set);
        std::string tok;
        while (std::getline(ls, tok, ',')) verts.push_back(std::stoi(tok));
        auto inst = SwitchingInstance::make(g, fam, verts);
        Graph out = apply(inst);
        emit(sw_out, to_graph6(out) + "\n");
        if (sw_verify) {
            bool ok = verify_R_cospectral(g, out);
            std::cout << "R-cospectral: " << (ok ? "yes" : "NO") << "\n";
            if (!ok) return 4;
        }
        return 0;
    }

    if (vf->parsed()) {
        Graph a = load_graph(vf_a), b = load_graph(vf_b);
        auto pa = char_poly(a.to_matrix()), pb = char_poly(b.to_matrix());
        std::cout << "p(g1) = " << pa.to_string() << "\n";
        std::cout << "p(g2) = " << pb.to_string() << "\n";
        bool cosp = (a.n == b.n) && pa == pb;
        std::cout << "cospectral: " << (cosp ? "yes" : "no") << "\n";
        if (a.n == b.n) {
            bool comp = char_poly(a.complement().to_matrix()) == char_poly(b.complement().to_matrix());
            std::cout << "complement-cospectral: " << (comp ? "yes" : "no") << "\n";
            std::cout << "R-cospectral: " << ((cosp && comp) ? "yes" : "no") << "\n";
            std::cout << "isomorphic: " << (is_isomorphic(a, b) ? "yes" : "no") << "\n";
        }
        return 0;
    }

    if (kn->parsed()) {
        Graph g = gen_kneser2(kn_n, kn_k);
        std::string text = to_graph6(g) + "\n";
        if (kn_switch) {
            auto inst = find_kneser_fano_instance(kn_n, kn_k);
            Graph mate = apply(inst);
            text += to_graph6(mate) + "\n";
            std::cout << "R-cospectral: " << (verify_R_cospectral(g, mate) ? "yes" : "NO") << "\n";
            std::cout << "isomorphic: " << (is_isomorphic(g, mate) ? "YES" : "no") << "\n";
        }
        emit(kn_out, text);
        return 0;
    }

    if (pl->parsed()) {
        auto fam = parse_family_or_throw(pl_family);
        SmallGraph b = pl_b.empty() ? SmallGraph::empty(fam.size()) : SmallGraph::from_hex(fam.size(), pl_b);
        auto inst = gen_planted(fam, b, pl_outside, pl_seed);
        emit(pl_out, to_graph6(inst.host) + "\n");
        std::cout << "# set:";
        for (int v : inst.set_vertices) std::cout << " " << v;
        std::cout << "\n";
        return 0;
    }

    throw usage_error("no subcommand given");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const paper_mismatch_error& e) {
        std::cerr << "paper-check mismatch: " << e.what() << "\n";
        return 5;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 4;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
