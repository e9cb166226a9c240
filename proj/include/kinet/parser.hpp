#pragma once

#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kinet/kinetics.hpp"
#include "kinet/network.hpp"

namespace kinet {

struct Span {
    int line = 0;  // 1-based
    int col = 0;   // 1-based
};

struct Diagnostic {
    enum class Kind { syntax, semantic };
    Kind kind = Kind::syntax;
    std::string message;
    Span span;

    std::string render() const {
        std::ostringstream os;
        os << "line " << span.line << ", col " << span.col << ": "
           << (kind == Kind::syntax ? "syntax" : "semantic") << " error: " << message;
        return os.str();
    }
};

struct ParsedTerm {
    Rat coeff = 1;
    std::string species;
    Span span;
    bool operator==(const ParsedTerm& o) const {
        return coeff == o.coeff && species == o.species;
    }
};

using ParsedComplex = std::vector<ParsedTerm>;

struct ReactionStmt {
    ParsedComplex lhs, rhs;
    bool reversible = false;
    std::vector<double> k;                // one rate, two for reversible
    std::vector<std::vector<Rat>> f_rows; // explicit kinetic-order rows, if any
    std::string label;
    Span span;       // reaction start
    Span k_span;     // "k" annotation, if present
    Span f_span;     // "F" annotation, if present
    bool operator==(const ReactionStmt& o) const {
        return lhs == o.lhs && rhs == o.rhs && reversible == o.reversible && k == o.k &&
               f_rows == o.f_rows && label == o.label;
    }
};

struct NetworkDocument {
    std::string name;
    std::vector<std::string> comments;  // leading comment block
    std::vector<std::string> species;   // declared, or collected by first use
    bool species_declared = false;
    bool mass_action_default = false;
    std::vector<ReactionStmt> reactions;
    bool operator==(const NetworkDocument& o) const {
        return name == o.name && comments == o.comments && species == o.species &&
               mass_action_default == o.mass_action_default && reactions == o.reactions;
    }
};

struct ParseResult {
    std::optional<NetworkDocument> doc;  // present iff no diagnostics
    std::vector<Diagnostic> diagnostics;
};

namespace detail {

enum class Tok { ident, number, arrow, biarrow, plus, semi, eq, lbrack, rbrack, comma, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    Span span;
};

inline bool ident_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
inline bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
inline bool digit(char c) { return c >= '0' && c <= '9'; }

// Tokenizes one source line; bad characters produce a diagnostic and stop the line.
inline bool lex_line(std::string_view text, int line_no, std::vector<Token>& out,
                     std::vector<Diagnostic>& diags) {
    size_t i = 0;
    auto span_at = [&](size_t pos) { return Span{line_no, static_cast<int>(pos) + 1}; };
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '#') break;
        Span sp = span_at(i);
        if (ident_start(c)) {
            size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            out.push_back({Tok::ident, std::string(text.substr(i, j - i)), sp});
            i = j;
            continue;
        }
        if (digit(c) || c == '.' || (c == '-' && i + 1 < text.size() && text[i + 1] != '>')) {
            size_t j = i;
            if (text[j] == '-') ++j;
            while (j < text.size() && digit(text[j])) ++j;
            if (j < text.size() && text[j] == '.') {
                ++j;
                while (j < text.size() && digit(text[j])) ++j;
            }
            if (j < text.size() && text[j] == '/' && j + 1 < text.size() && digit(text[j + 1])) {
                ++j;
                while (j < text.size() && digit(text[j])) ++j;
            }
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
                size_t k = j + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
                if (k < text.size() && digit(text[k])) {
                    j = k;
                    while (j < text.size() && digit(text[j])) ++j;
                }
            }
            std::string tok(text.substr(i, j - i));
            if (tok == "-" || tok == ".") {
                diags.push_back({Diagnostic::Kind::syntax, "stray '" + tok + "'", sp});
                return false;
            }
            out.push_back({Tok::number, std::move(tok), sp});
            i = j;
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({Tok::arrow, "->", sp});
            i += 2;
            continue;
        }
        if (c == '<' && i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
            out.push_back({Tok::biarrow, "<->", sp});
            i += 3;
            continue;
        }
        switch (c) {
            case '+': out.push_back({Tok::plus, "+", sp}); ++i; continue;
            case ';': out.push_back({Tok::semi, ";", sp}); ++i; continue;
            case '=': out.push_back({Tok::eq, "=", sp}); ++i; continue;
            case '[': out.push_back({Tok::lbrack, "[", sp}); ++i; continue;
            case ']': out.push_back({Tok::rbrack, "]", sp}); ++i; continue;
            case ',': out.push_back({Tok::comma, ",", sp}); ++i; continue;
            default:
                diags.push_back({Diagnostic::Kind::syntax,
                                 std::string("unexpected character '") + c + "'", sp});
                return false;
        }
    }
    out.push_back({Tok::end, "", span_at(text.size())});
    return true;
}

// Cursor over one line's tokens.
struct LineParser {
    const std::vector<Token>& toks;
    size_t pos = 0;
    std::vector<Diagnostic>& diags;

    const Token& peek() const { return toks[pos]; }
    const Token& get() { return toks[pos + 1 < toks.size() ? pos++ : pos]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool accept(Tok k) {
        if (!at(k)) return false;
        ++pos;
        return true;
    }
    bool expect(Tok k, const std::string& what) {
        if (accept(k)) return true;
        diags.push_back({Diagnostic::Kind::syntax, "expected " + what, peek().span});
        return false;
    }

    std::optional<Rat> rational(const std::string& what) {
        if (!at(Tok::number)) {
            diags.push_back({Diagnostic::Kind::syntax, "expected " + what, peek().span});
            return std::nullopt;
        }
        Token t = get();
        try {
            return rat_from_string(t.text);
        } catch (const std::invalid_argument&) {
            diags.push_back({Diagnostic::Kind::syntax, "malformed number '" + t.text + "'", t.span});
            return std::nullopt;
        }
    }

    std::optional<double> real(const std::string& what) {
        auto r = rational(what);
        if (!r) return std::nullopt;
        return to_double(*r);
    }

    bool complex_part(ParsedComplex& out) {
        // "0" denotes the empty complex
        if (at(Tok::number) && peek().text == "0" &&
            (pos + 1 >= toks.size() || toks[pos + 1].kind == Tok::arrow ||
             toks[pos + 1].kind == Tok::biarrow || toks[pos + 1].kind == Tok::semi ||
             toks[pos + 1].kind == Tok::end)) {
            get();
            return true;
        }
        while (true) {
            ParsedTerm term;
            term.span = peek().span;
            if (at(Tok::number)) {
                auto c = rational("stoichiometric coefficient");
                if (!c) return false;
                term.coeff = *c;
            }
            if (!at(Tok::ident)) {
                diags.push_back({Diagnostic::Kind::syntax, "expected species name", peek().span});
                return false;
            }
            term.species = get().text;
            out.push_back(std::move(term));
            if (!accept(Tok::plus)) return true;
        }
    }

    std::optional<std::vector<double>> rate_values() {
        std::vector<double> ks;
        if (accept(Tok::lbrack)) {
            do {
                auto v = real("rate constant");
                if (!v) return std::nullopt;
                ks.push_back(*v);
            } while (accept(Tok::comma));
            if (!expect(Tok::rbrack, "']'")) return std::nullopt;
        } else {
            auto v = real("rate constant");
            if (!v) return std::nullopt;
            ks.push_back(*v);
        }
        return ks;
    }

    std::optional<std::vector<Rat>> f_row() {
        std::vector<Rat> row;
        if (!expect(Tok::lbrack, "'['")) return std::nullopt;
        if (!at(Tok::rbrack)) {
            do {
                auto v = rational("kinetic order");
                if (!v) return std::nullopt;
                row.push_back(*v);
            } while (accept(Tok::comma));
        }
        if (!expect(Tok::rbrack, "']'")) return std::nullopt;
        return row;
    }

    std::optional<std::vector<std::vector<Rat>>> f_values() {
        std::vector<std::vector<Rat>> rows;
        if (!expect(Tok::lbrack, "'['")) return std::nullopt;
        if (at(Tok::lbrack)) {
            do {
                auto row = f_row();
                if (!row) return std::nullopt;
                rows.push_back(std::move(*row));
            } while (accept(Tok::comma));
            if (!expect(Tok::rbrack, "']'")) return std::nullopt;
            return rows;
        }
        // flat form: a single row, closing bracket already pending
        std::vector<Rat> row;
        if (!at(Tok::rbrack)) {
            do {
                auto v = rational("kinetic order");
                if (!v) return std::nullopt;
                row.push_back(*v);
            } while (accept(Tok::comma));
        }
        if (!expect(Tok::rbrack, "']'")) return std::nullopt;
        rows.push_back(std::move(row));
        return rows;
    }
};

inline std::string format_double(double v) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

}  // namespace detail

// Parses the reaction-list DSL. Returns a document when the text is
// syntactically clean, otherwise the diagnostics explain every rejected line.
inline ParseResult parse_network(std::string_view text) {
    ParseResult result;
    NetworkDocument doc;
    bool in_header_comments = true;

    int line_no = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t nl = text.find('\n', start);
        std::string_view line = text.substr(
            start, nl == std::string_view::npos ? text.size() - start : nl - start);
        ++line_no;
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        // leading comment block becomes document metadata
        size_t first = line.find_first_not_of(" \t\r");
        if (in_header_comments && first != std::string_view::npos && line[first] == '#') {
            std::string_view body = line.substr(first + 1);
            if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
            doc.comments.emplace_back(body);
            continue;
        }
        if (first != std::string_view::npos && line[first] != '#') in_header_comments = false;

        std::vector<detail::Token> toks;
        if (!detail::lex_line(line, line_no, toks, result.diagnostics)) continue;
        if (toks.size() == 1) continue;  // blank or comment-only

        detail::LineParser lp{toks, 0, result.diagnostics};
        const detail::Token& head = lp.peek();
        if (head.kind == detail::Tok::ident && head.text == "network") {
            lp.get();
            if (!lp.at(detail::Tok::ident)) {
                result.diagnostics.push_back(
                    {Diagnostic::Kind::syntax, "expected network name", lp.peek().span});
                continue;
            }
            doc.name = lp.get().text;
            lp.expect(detail::Tok::end, "end of line");
            continue;
        }
        if (head.kind == detail::Tok::ident && head.text == "species") {
            lp.get();
            if (!lp.at(detail::Tok::ident)) {
                result.diagnostics.push_back(
                    {Diagnostic::Kind::syntax, "expected at least one species name", lp.peek().span});
                continue;
            }
            doc.species_declared = true;
            while (lp.at(detail::Tok::ident)) doc.species.push_back(lp.get().text);
            lp.expect(detail::Tok::end, "end of line");
            continue;
        }
        if (head.kind == detail::Tok::ident && head.text == "kinetics") {
            lp.get();
            if (lp.at(detail::Tok::ident) && lp.peek().text == "mass_action") {
                lp.get();
                doc.mass_action_default = true;
                lp.expect(detail::Tok::end, "end of line");
            } else {
                result.diagnostics.push_back(
                    {Diagnostic::Kind::syntax, "expected 'mass_action'", lp.peek().span});
            }
            continue;
        }

        // reaction statement
        ReactionStmt stmt;
        stmt.span = head.span;
        if (!lp.complex_part(stmt.lhs)) continue;
        if (lp.accept(detail::Tok::arrow)) {
            stmt.reversible = false;
        } else if (lp.accept(detail::Tok::biarrow)) {
            stmt.reversible = true;
        } else {
            result.diagnostics.push_back(
                {Diagnostic::Kind::syntax, "expected '->' or '<->'", lp.peek().span});
            continue;
        }
        if (!lp.complex_part(stmt.rhs)) continue;

        bool ok = true;
        while (lp.accept(detail::Tok::semi)) {
            if (!lp.at(detail::Tok::ident)) {
                result.diagnostics.push_back(
                    {Diagnostic::Kind::syntax, "expected annotation key", lp.peek().span});
                ok = false;
                break;
            }
            detail::Token key = lp.get();
            if (!lp.expect(detail::Tok::eq, "'='")) {
                ok = false;
                break;
            }
            if (key.text == "k") {
                stmt.k_span = key.span;
                auto ks = lp.rate_values();
                if (!ks) {
                    ok = false;
                    break;
                }
                stmt.k = std::move(*ks);
            } else if (key.text == "F") {
                stmt.f_span = key.span;
                auto fs = lp.f_values();
                if (!fs) {
                    ok = false;
                    break;
                }
                stmt.f_rows = std::move(*fs);
            } else if (key.text == "label") {
                if (!lp.at(detail::Tok::ident) && !lp.at(detail::Tok::number)) {
                    result.diagnostics.push_back(
                        {Diagnostic::Kind::syntax, "expected label value", lp.peek().span});
                    ok = false;
                    break;
                }
                stmt.label = lp.get().text;
            } else {
                result.diagnostics.push_back({Diagnostic::Kind::syntax,
                                              "unknown annotation '" + key.text + "'", key.span});
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (!lp.at(detail::Tok::end)) {
            result.diagnostics.push_back(
                {Diagnostic::Kind::syntax, "unexpected trailing tokens", lp.peek().span});
            continue;
        }
        doc.reactions.push_back(std::move(stmt));
    }

    if (result.diagnostics.empty()) result.doc = std::move(doc);
    return result;
}

// Canonical text form; parse(print(doc)) reproduces the document.
inline std::string print_network(const NetworkDocument& doc) {
    std::ostringstream os;
    for (const auto& c : doc.comments) os << "# " << c << "\n";
    if (!doc.name.empty()) os << "network " << doc.name << "\n";
    if (doc.species_declared) {
        os << "species";
        for (const auto& s : doc.species) os << " " << s;
        os << "\n";
    }
    if (doc.mass_action_default) os << "kinetics mass_action\n";
    auto put_complex = [&](const ParsedComplex& terms) {
        if (terms.empty()) {
            os << "0";
            return;
        }
        for (size_t i = 0; i < terms.size(); ++i) {
            if (i) os << " + ";
            if (terms[i].coeff != 1) os << rat_to_string(terms[i].coeff) << " ";
            os << terms[i].species;
        }
    };
    for (const auto& r : doc.reactions) {
        put_complex(r.lhs);
        os << (r.reversible ? " <-> " : " -> ");
        put_complex(r.rhs);
        if (!r.k.empty()) {
            os << " ; k=";
            if (r.k.size() == 1) {
                os << detail::format_double(r.k[0]);
            } else {
                os << "[";
                for (size_t i = 0; i < r.k.size(); ++i)
                    os << (i ? "," : "") << detail::format_double(r.k[i]);
                os << "]";
            }
        }
        if (!r.f_rows.empty()) {
            os << " ; F=";
            if (r.f_rows.size() == 1) {
                os << "[";
                for (size_t i = 0; i < r.f_rows[0].size(); ++i)
                    os << (i ? "," : "") << rat_to_string(r.f_rows[0][i]);
                os << "]";
            } else {
                os << "[";
                for (size_t j = 0; j < r.f_rows.size(); ++j) {
                    os << (j ? ",[" : "[");
                    for (size_t i = 0; i < r.f_rows[j].size(); ++i)
                        os << (i ? "," : "") << rat_to_string(r.f_rows[j][i]);
                    os << "]";
                }
                os << "]";
            }
        }
        if (!r.label.empty()) os << " ; label=" << r.label;
        os << "\n";
    }
    return os.str();
}

struct CompiledModel {
    ReactionNetwork net;
    PowerLawKinetics kin;
};

struct CompileResult {
    std::optional<CompiledModel> model;  // present iff no diagnostics
    std::vector<Diagnostic> diagnostics;
};

// Semantic pass: resolves species, expands reversible shorthand and
// mass-action defaults, deduplicates complexes, and validates the axioms the
// network type enforces, reporting source spans instead of throwing.
inline CompileResult to_model(const NetworkDocument& doc) {
    CompileResult result;
    auto semantic = [&](const std::string& msg, Span sp) {
        result.diagnostics.push_back({Diagnostic::Kind::semantic, msg, sp});
    };

    std::vector<std::string> species = doc.species;
    std::map<std::string, size_t> species_index;
    for (size_t i = 0; i < species.size(); ++i) {
        if (!species_index.emplace(species[i], i).second)
            semantic("species '" + species[i] + "' declared twice", Span{0, 0});
    }
    if (!doc.species_declared) {
        for (const auto& r : doc.reactions)
            for (const auto* side : {&r.lhs, &r.rhs})
                for (const auto& t : *side)
                    if (species_index.emplace(t.species, species.size()).second)
                        species.push_back(t.species);
    }
    const size_t m = species.size();

    auto build_complex = [&](const ParsedComplex& terms, bool& ok) {
        QVec v(m, Rat(0));
        for (const auto& t : terms) {
            auto it = species_index.find(t.species);
            if (it == species_index.end()) {
                semantic("species '" + t.species + "' is not declared", t.span);
                ok = false;
                continue;
            }
            if (t.coeff < 0) {
                semantic("negative stoichiometric coefficient " + rat_to_string(t.coeff), t.span);
                ok = false;
                continue;
            }
            v[it->second] += t.coeff;
        }
        return v;
    };

    std::vector<QVec> complexes;
    auto intern_complex = [&](const QVec& v) {
        for (size_t i = 0; i < complexes.size(); ++i)
            if (complexes[i] == v) return static_cast<int>(i);
        complexes.push_back(v);
        return static_cast<int>(complexes.size() - 1);
    };

    std::vector<std::pair<int, int>> reactions;
    std::vector<QVec> order_rows;
    std::vector<double> rates;

    for (const auto& r : doc.reactions) {
        bool ok = true;
        QVec lhs = build_complex(r.lhs, ok);
        QVec rhs = build_complex(r.rhs, ok);
        if (!ok) continue;

        size_t need_k = r.reversible ? 2 : 1;
        if (r.k.size() != need_k) {
            semantic("expected " + std::to_string(need_k) + " rate constant(s), got " +
                         std::to_string(r.k.size()),
                     r.k.empty() ? r.span : r.k_span);
            continue;
        }
        for (double kv : r.k)
            if (!(kv > 0)) {
                semantic("rate constant must be positive, got " + detail::format_double(kv),
                         r.k_span);
                ok = false;
            }
        if (!ok) continue;

        std::vector<std::vector<Rat>> f_rows = r.f_rows;
        if (f_rows.empty()) {
            if (!doc.mass_action_default) {
                semantic("no kinetic order row: give F=[...] or declare 'kinetics mass_action'",
                         r.span);
                continue;
            }
            f_rows.push_back(std::vector<Rat>(lhs.begin(), lhs.end()));
            if (r.reversible) f_rows.push_back(std::vector<Rat>(rhs.begin(), rhs.end()));
        }
        if (f_rows.size() != need_k) {
            semantic("expected " + std::to_string(need_k) + " kinetic order row(s), got " +
                         std::to_string(f_rows.size()),
                     r.f_span);
            continue;
        }
        for (const auto& row : f_rows)
            if (row.size() != m) {
                semantic("kinetic order row has " + std::to_string(row.size()) +
                             " entries, species count is " + std::to_string(m),
                         r.f_span);
                ok = false;
            }
        if (!ok) continue;

        int a = intern_complex(lhs);
        int b = intern_complex(rhs);
        if (a == b) {
            semantic("self-loop: reactant and product complexes coincide", r.span);
            continue;
        }
        auto add = [&](int from, int to, double rate, const std::vector<Rat>& row) {
            for (const auto& existing : reactions)
                if (existing.first == from && existing.second == to) {
                    semantic("duplicate reaction", r.span);
                    return;
                }
            reactions.emplace_back(from, to);
            order_rows.push_back(row);
            rates.push_back(rate);
        };
        add(a, b, r.k[0], f_rows[0]);
        if (r.reversible) add(b, a, r.k[1], f_rows[1]);
    }

    if (!result.diagnostics.empty()) return result;
    try {
        ReactionNetwork net(species, std::move(complexes), std::move(reactions));
        PowerLawKinetics kin(QMat::from_rows(order_rows, m), std::move(rates));
        result.model.emplace(CompiledModel{std::move(net), std::move(kin)});
    } catch (const error& e) {
        semantic(e.what(), Span{0, 0});
    }
    return result;
}

// Parse + semantic pass in one step.
inline CompileResult compile_network(std::string_view text) {
    ParseResult p = parse_network(text);
    if (!p.doc) return CompileResult{std::nullopt, std::move(p.diagnostics)};
    return to_model(*p.doc);
}

}  // namespace kinet
