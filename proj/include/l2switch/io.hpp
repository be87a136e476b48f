#pragma once

#include <fstream>
#include <sstream>

#include "l2switch/reducibility.hpp"

namespace l2switch {

constexpr const char* kFormatVersion = "l2switch-v1";

// ---- catalog matrix dump ------------------------------------------------------

inline std::string write_catalog(const SwitchingFamily& f) {
    auto m = build_scaled(f);
    std::ostringstream out;
    out << "# " << kFormatVersion << " catalog\n";
    out << "# family: " << f.name() << "\n";
    out << "# size: " << f.size() << "\n";
    out << "# entries: 2R\n";
    out << m.to_string();
    return out.str();
}

// ---- V set files ----------------------------------------------------------------

inline std::string write_vset(const SwitchingFamily& f, const VSet& vs) {
    std::ostringstream out;
    out << "# " << kFormatVersion << " vset\n";
    out << "# family: " << f.name() << "\n";
    out << "# count: " << vs.members.size() << "\n";
    out << "# columns: v image\n";
    const int n = vs.n;
    auto bits = [&](uint32_t v) {
        std::string s(static_cast<size_t>(n), '0');
        for (int i = 0; i < n; ++i)
            if (v >> i & 1) s[static_cast<size_t>(i)] = '1';
        return s;
    };
    for (size_t i = 0; i < vs.members.size(); ++i)
        out << bits(vs.members[i]) << " " << bits(vs.images[i]) << "\n";
    return out.str();
}

// ---- B set files -----------------------------------------------------------------

// One matrix per line: upper-triangle hex plus order. Large circulant sets are
// written in reduced form (one representative per block-complement orbit,
// diagonal blocks zero, off-diagonal blocks normalized).
inline std::string write_bset(const SwitchingFamily& f, const std::string& method,
                              const std::vector<SmallGraph>& set, uint64_t raw_count, bool reduced) {
    std::ostringstream out;
    out << "# " << kFormatVersion << " bset\n";
    out << "# family: " << f.name() << "\n";
    out << "# method: " << method << "\n";
    out << "# count: " << raw_count << "\n";
    if (reduced) out << "# representation: reduced (block-complement orbit representatives)\n";
    else out << "# representation: full\n";
    out << "# lines: " << set.size() << "\n";
    for (const auto& b : set) out << b.to_hex() << " " << static_cast<int>(b.n) << "\n";
    return out.str();
}

struct BsetFile {
    SwitchingFamily family;
    std::string method;
    uint64_t count = 0;
    bool reduced = false;
    std::vector<SmallGraph> set;
};

inline BsetFile read_bset(std::istream& in) {
    BsetFile f;
    f.family = SwitchingFamily::gm4();
    std::string line;
    bool have_family = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string key;
            ls >> key;
            if (key == "family:") {
                std::string name;
                ls >> name;
                auto fam = SwitchingFamily::parse(name);
                if (!fam) throw parse_error("unknown family in bset header: " + name);
                f.family = *fam;
                have_family = true;
            } else if (key == "method:") {
                ls >> f.method;
            } else if (key == "count:") {
                ls >> f.count;
            } else if (key == "representation:") {
                std::string rep;
                ls >> rep;
                f.reduced = (rep == "reduced");
            }
            continue;
        }
        std::istringstream ls(line);
        std::string hex;
        int n;
        if (!(ls >> hex >> n)) throw parse_error("bad bset line: " + line);
        f.set.push_back(SmallGraph::from_hex(n, hex));
    }
    if (!have_family) throw parse_error("bset file missing family header");
    return f;
}

// ---- class tables ------------------------------------------------------------------

inline std::string flag_name(const std::optional<bool>& irr) {
    if (!irr) return "unknown";
    return *irr ? "irreducible" : "reducible";
}

inline std::string write_classes(const SwitchingFamily& f, const std::vector<EquivalenceClass>& cls) {
    std::ostringstream out;
    out << "# " << kFormatVersion << " classes\n";
    out << "# family: " << f.name() << "\n";
    out << "# classes: " << cls.size() << "\n";
    uint64_t total = 0;
    for (const auto& c : cls) total += c.members;
    out << "# members: " << total << "\n";
    out << "# columns: canonical order size flag\n";
    for (const auto& c : cls)
        out << c.canonical.to_hex() << " " << static_cast<int>(c.canonical.n) << " " << c.members << " "
            << flag_name(c.irreducible) << "\n";
    return out.str();
}

struct ClassFile {
    SwitchingFamily family;
    std::vector<EquivalenceClass> classes;
};

inline ClassFile read_classes(std::istream& in) {
    ClassFile f;
    f.family = SwitchingFamily::gm4();
    bool have_family = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string key;
            ls >> key;
            if (key == "family:") {
                std::string name;
                ls >> name;
                auto fam = SwitchingFamily::parse(name);
                if (!fam) throw parse_error("unknown family in class header: " + name);
                f.family = *fam;
                have_family = true;
            }
            continue;
        }
        std::istringstream ls(line);
        std::string hex, flag;
        int n;
        uint64_t size;
        if (!(ls >> hex >> n >> size >> flag)) throw parse_error("bad class line: " + line);
        EquivalenceClass c;
        c.canonical = SmallGraph::from_hex(n, hex);
        c.members = size;
        if (flag == "irreducible") c.irreducible = true;
        else if (flag == "reducible") c.irreducible = false;
        f.classes.push_back(std::move(c));
    }
    if (!have_family) throw parse_error("class file missing family header");
    return f;
}

// ---- certificates --------------------------------------------------------------------

inline std::string write_certificate(const Certificate& c) {
    std::ostringstream out;
    out << "certificate " << c.family.name() << " " << c.family.size() << "\n";
    out << "b " << c.b.to_hex() << "\n";
    out << "factors " << c.factors.size() << "\n";
    for (const auto& f : c.factors) out << "factor " << f.describe() << "\n";
    out << "colperm";
    for (uint8_t p : c.col_perm) out << " " << static_cast<int>(p);
    out << "\n";
    for (const auto& b : c.intermediates) out << "intermediate " << b.to_hex() << "\n";
    out << "end\n";
    return out.str();
}

namespace detail {

inline FactorBlock parse_factor_block(const std::string& token) {
    auto lb = token.find('[');
    if (lb == std::string::npos || token.back() != ']') throw parse_error("bad factor block: " + token);
    std::string kind = token.substr(0, lb);
    FactorBlock b;
    if (kind == "gm4") {
        b.kind = BlockKind::gm4;
        b.k = 2;
    } else if (kind == "fano") {
        b.kind = BlockKind::fano;
        b.k = 0;
    } else if (kind.size() > 1 && kind[0] == 'r') {
        b.kind = BlockKind::circulant;
        int size = std::stoi(kind.substr(1));
        if (size < 6 || size % 2) throw parse_error("bad circulant block size in " + token);
        b.k = size / 2;
    } else {
        throw parse_error("unknown factor block kind: " + kind);
    }
    std::string inner = token.substr(lb + 1, token.size() - lb - 2);
    std::istringstream ls(inner);
    std::string num;
    while (std::getline(ls, num, ',')) b.verts.push_back(static_cast<uint8_t>(std::stoi(num)));
    size_t expect = b.kind == BlockKind::gm4 ? 4 : (b.kind == BlockKind::fano ? 7 : static_cast<size_t>(2 * b.k));
    if (b.verts.size() != expect) throw parse_error("factor block has wrong arity: " + token);
    return b;
}

} // namespace detail

inline std::vector<Certificate> read_certificates(std::istream& in) {
    std::vector<Certificate> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream head(line);
        std::string word, famname;
        int n;
        head >> word >> famname >> n;
        if (word != "certificate") throw parse_error("expected certificate header, got: " + line);
        auto fam = SwitchingFamily::parse(famname);
        if (!fam || fam->size() != n) throw parse_error("bad certificate family: " + famname);
        Certificate c;
        c.family = *fam;
        size_t nfactors = 0;
        while (std::getline(in, line) && line != "end") {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            std::string key;
            ls >> key;
            if (key == "b") {
                std::string hex;
                ls >> hex;
                c.b = SmallGraph::from_hex(n, hex);
            } else if (key == "factors") {
                ls >> nfactors;
            } else if (key == "factor") {
                Factor f;
                std::string tok;
                while (ls >> tok) f.blocks.push_back(detail::parse_factor_block(tok));
                f.m2 = detail::factor_matrix(n, f.blocks);
                c.factors.push_back(std::move(f));
            } else if (key == "colperm") {
                int p;
                while (ls >> p) c.col_perm.push_back(static_cast<uint8_t>(p));
            } else if (key == "intermediate") {
                std::string hex;
                ls >> hex;
                c.intermediates.push_back(SmallGraph::from_hex(n, hex));
            } else {
                throw parse_error("unknown certificate line: " + line);
            }
        }
        if (c.factors.size() != nfactors) throw parse_error("certificate factor count mismatch");
        out.push_back(std::move(c));
    }
    return out;
}

// ---- small file helpers -----------------------------------------------------------------

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot open for writing: " + path);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace l2switch
