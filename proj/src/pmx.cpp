#include "pmrank/pmx.hpp"

#include "pmrank/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace pmrank {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
    std::string_view text;
    std::size_t column; // 1-based
};

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<Token> split_words(std::string_view line, std::size_t base_col = 1) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_blank(line[i])) ++i;
        if (i == line.size()) break;
        std::size_t j = i;
        while (j < line.size() && !is_blank(line[j])) ++j;
        out.push_back({line.substr(i, j - i), base_col + i});
        i = j;
    }
    return out;
}

std::uint64_t parse_uint(const Token& t, std::size_t line, const char* what) {
    std::uint64_t v = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || t.text.empty())
        throw ParseError(std::string("expected ") + what + ", found '" + std::string(t.text) + "'", line, t.column);
    return v;
}

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}
    bool next(std::string_view& line) {
        if (pos_ > text_.size() || (pos_ == text_.size() && !text_.empty() && text_.back() == '\n')) return false;
        if (pos_ == text_.size() && text_.empty()) return false;
        std::size_t end = text_.find('\n', pos_);
        if (end == std::string_view::npos) end = text_.size();
        line = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        ++number_;
        return true;
    }
    std::size_t number() const noexcept { return number_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t number_ = 0;
};

std::vector<Token> header_line(LineReader& in, const char* keyword, std::size_t arity) {
    std::string_view line;
    if (!in.next(line)) throw ParseError(std::string("missing '") + keyword + "' line", in.number() + 1, 1);
    auto words = split_words(line);
    if (words.empty() || words[0].text != keyword)
        throw ParseError(std::string("expected '") + keyword + "'", in.number(), words.empty() ? 1 : words[0].column);
    if (words.size() != arity + 1)
        throw ParseError(std::string("'") + keyword + "' takes " + std::to_string(arity) + " value(s)", in.number(),
                         words.size() > arity + 1 ? words[arity + 1].column : line.size() + 1);
    return words;
}

} // namespace

PolyMatrix parse_pmx(std::string_view text) {
    LineReader in(text);
    std::string_view line;
    if (!in.next(line)) throw ParseError("empty input", 1, 1);
    {
        auto words = split_words(line);
        if (words.size() != 3 || words[0].text != "#" || words[1].text != "pmx" || words[2].text != "v1")
            throw ParseError("expected header '# pmx v1'", 1, 1);
    }

    auto mod_words = header_line(in, "modulus", 1);
    const std::uint64_t p = parse_uint(mod_words[1], in.number(), "a modulus");
    if (p > FieldSpec::max_modulus || !is_prime(p))
        throw ParseError("modulus " + std::to_string(p) + " is not a prime below 2^31", in.number(), mod_words[1].column);
    const FieldSpec f(p);

    auto dim_words = header_line(in, "dims", 2);
    const std::size_t m = parse_uint(dim_words[1], in.number(), "a row count");
    const std::size_t n = parse_uint(dim_words[2], in.number(), "a column count");

    PolyMatrix F(f, m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (!in.next(line)) throw ParseError("expected " + std::to_string(m) + " body rows, found " + std::to_string(i),
                                             in.number() + 1, 1);
        const std::size_t ln = in.number();
        std::size_t start = 0, j = 0;
        while (true) {
            std::size_t semi = line.find(';', start);
            std::string_view field = line.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
            auto words = split_words(field, start + 1);
            if (n == 0 && words.empty() && semi == std::string_view::npos) break;
            if (j == n) throw ParseError("more than " + std::to_string(n) + " entries", ln, start + 1);
            if (words.empty()) throw ParseError("empty entry", ln, start + 1);
            std::vector<Coeff> c;
            for (const auto& w : words) {
                const std::uint64_t v = parse_uint(w, ln, "a coefficient");
                if (v >= p)
                    throw ParseError("coefficient " + std::to_string(v) + " is not a residue mod " + std::to_string(p), ln,
                                     w.column);
                c.push_back(static_cast<Coeff>(v));
            }
            F(i, j++) = Poly(f, std::move(c));
            if (semi == std::string_view::npos) break;
            start = semi + 1;
        }
        if (j != n)
            throw ParseError("expected " + std::to_string(n) + " entries, found " + std::to_string(j), ln, line.size() + 1);
    }
    while (in.next(line))
        if (!split_words(line).empty()) throw ParseError("unexpected content after the body", in.number(), 1);
    return F;
}

std::string serialize_pmx(const PolyMatrix& F) {
    std::ostringstream out;
    out << "# pmx v1\nmodulus " << F.field().modulus() << "\ndims " << F.rows() << ' ' << F.cols() << '\n';
    for (std::size_t i = 0; i < F.rows(); ++i) {
        for (std::size_t j = 0; j < F.cols(); ++j) {
            if (j) out << " ; ";
            out << F(i, j).to_text();
        }
        out << '\n';
    }
    return out.str();
}

PolyMatrix read_pmx_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pmx(buf.str());
}

void write_pmx_file(const std::string& path, const PolyMatrix& F) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << serialize_pmx(F);
    if (!out) throw UsageError("write to '" + path + "' failed");
}

} // namespace pmrank
