#include "contourforge/contour_spec.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <string>
#include <vector>

#include "contourforge/errors.hpp"

namespace contourforge {

namespace {

struct SpecParser {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }

    std::size_t offset() const { return pos + 1; }  // 1-based

    bool accept(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c))
            throw SyntaxError(std::string("expected '") + c + "' in contour spec", offset(),
                              {std::string(1, c)});
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        if (start == pos)
            throw SyntaxError("expected an identifier in contour spec", offset(), {"identifier"});
        return std::string(src.substr(start, pos - start));
    }

    double number() {
        skip_ws();
        std::size_t start = pos;
        if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
        while (pos < src.size() &&
               (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.'))
            ++pos;
        if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
            ++pos;
            if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(src.data() + start, src.data() + pos, v);
        if (ec != std::errc{} || ptr != src.data() + pos || start == pos)
            throw SyntaxError("expected a number in contour spec", start + 1, {"number"});
        return v;
    }

    void done() {
        skip_ws();
        if (pos != src.size())
            throw SyntaxError("unexpected trailing input in contour spec", offset(),
                              {"end of input"});
    }
};

struct ParsedCall {
    std::string name;
    std::map<std::string, double> kv;
    std::vector<double> positional;
    std::vector<double> poly;  // from "p=c0,c1,..."
    bool has_poly = false;
};

// name '(' [args] ')' where args are "key=value" pairs, bare numbers, or the
// polygraph form "p=1,0,-4"; ',' and ';' both separate arguments.
ParsedCall parse_call(SpecParser& p) {
    ParsedCall call;
    call.name = p.ident();
    p.expect('(');
    p.skip_ws();
    if (p.accept(')')) return call;
    for (;;) {
        p.skip_ws();
        if (p.pos < p.src.size() && std::isalpha(static_cast<unsigned char>(p.src[p.pos]))) {
            std::string key = p.ident();
            p.expect('=');
            if (key == "p") {
                call.has_poly = true;
                call.poly.push_back(p.number());
                while (p.accept(',')) call.poly.push_back(p.number());
            } else {
                call.kv[key] = p.number();
            }
        } else {
            call.positional.push_back(p.number());
        }
        if (p.accept(',') || p.accept(';')) continue;
        p.expect(')');
        return call;
    }
}

double require_key(const ParsedCall& call, const std::string& key) {
    auto it = call.kv.find(key);
    if (it == call.kv.end())
        throw InvalidFamilyParams("contour '" + call.name + "' requires parameter '" + key + "'");
    return it->second;
}

Contour build_from_call(const ParsedCall& call) {
    if (call.name == "segment") {
        if (call.positional.size() != 2)
            throw InvalidFamilyParams("segment(a, b) takes two real endpoints");
        return Contour({PathSegment::line({call.positional[0], 0.0},
                                          {call.positional[1], 0.0})});
    }
    if (call.name == "semicircle")
        return make_family("semicircle_closure").generate(require_key(call, "R"));
    if (call.name == "parabola")
        return make_family("parabola_closure").generate(require_key(call, "R"));
    if (call.name == "ellipse") {
        std::map<std::string, double> aux;
        if (auto it = call.kv.find("ry"); it != call.kv.end()) aux["ry"] = it->second;
        return make_family("half_ellipse_closure").generate(require_key(call, "R"), aux);
    }
    if (call.name == "indented") {
        std::map<std::string, double> aux;
        if (auto it = call.kv.find("eps"); it != call.kv.end()) aux["eps"] = it->second;
        return make_family("indented_semicircle_loop").generate(require_key(call, "R"), aux);
    }
    if (call.name == "polygraph") {
        if (!call.has_poly)
            throw InvalidFamilyParams("polygraph requires coefficients: polygraph(R=2; p=1,0,-4)");
        std::map<std::string, double> aux;
        for (std::size_t k = 0; k < call.poly.size(); ++k)
            aux["p" + std::to_string(k)] = call.poly[k];
        return make_family("polygraph_closure").generate(require_key(call, "R"), aux);
    }
    throw InvalidFamilyParams("unknown contour spec '" + call.name + "'");
}

}  // namespace

Contour parse_contour_spec(std::string_view spec) {
    SpecParser p{spec};
    p.skip_ws();
    // loop(...) wraps a closure spec.
    std::size_t save = p.pos;
    std::string head;
    try {
        head = p.ident();
    } catch (const SyntaxError&) {
        throw SyntaxError("expected a contour spec", p.offset(), {"identifier"});
    }
    if (head == "loop") {
        p.expect('(');
        ParsedCall inner = parse_call(p);
        if (inner.name == "segment" || inner.name == "indented" || inner.name == "loop")
            throw InvalidFamilyParams("loop(...) expects a bare closure spec");
        Contour closure = build_from_call(inner);
        p.expect(')');
        p.done();
        return full_loop(closure);
    }
    p.pos = save;
    ParsedCall call = parse_call(p);
    p.done();
    return build_from_call(call);
}

bool spec_is_single_piece(std::string_view spec) {
    SpecParser p{spec};
    p.skip_ws();
    std::size_t save = p.pos;
    std::string head;
    try {
        head = p.ident();
    } catch (const SyntaxError&) {
        return false;
    }
    p.pos = save;
    return head != "loop" && head != "indented";
}

}  // namespace contourforge
