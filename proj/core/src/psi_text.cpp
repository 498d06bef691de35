#include "infid/psi_text.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <type_traits>

#include "infid/errors.hpp"

namespace infid {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void append_vector(std::string& out, const Vector& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_number(v[i]);
  }
  out += ']';
}

void append_node(std::string& out, const LipschitzFn& f) {
  std::visit(overloaded{
                 [&](const node::Linear& n) {
                   out += "linear(";
                   append_vector(out, n.phi.coeffs());
                   out += ')';
                 },
                 [&](const node::AbsDev& n) {
                   out += "absdev(";
                   append_vector(out, n.phi.coeffs());
                   out += ',' + format_number(n.offset) + ')';
                 },
                 [&](const node::ScaledDist& n) {
                   out += "dist(" + format_number(n.alpha) + ',';
                   append_vector(out, n.center);
                   out += ')';
                 },
                 [&](const node::SmoothDist& n) {
                   out += "smooth(" + format_number(n.alpha) + ',' + format_number(n.eps) + ',';
                   append_vector(out, n.center);
                   out += ')';
                 },
                 [&](const node::MaxOf& n) {
                   out += "max(";
                   for (std::size_t i = 0; i < n.children.size(); ++i) {
                     if (i) out += ',';
                     append_node(out, n.children[i]);
                   }
                   out += ')';
                 },
                 [&](const node::Sum& n) {
                   out += "sum(";
                   for (std::size_t i = 0; i < n.children.size(); ++i) {
                     if (i) out += ',';
                     append_node(out, n.children[i]);
                   }
                   out += ')';
                 },
                 [&](const node::Scale& n) {
                   out += "scale(" + format_number(n.alpha) + ',';
                   append_node(out, n.child.front());
                   out += ')';
                 },
                 [&](const node::Shift& n) {
                   out += "shift(";
                   append_node(out, n.child.front());
                   out += ',' + format_number(n.offset) + ')';
                 },
             },
             f.node());
}

class Parser {
 public:
  Parser(std::string_view text, const Space& space) : text_(text), space_(space) {}

  LipschitzFn parse() {
    LipschitzFn f = parse_node();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters after expression");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("psi: " + msg + " at column " + std::to_string(pos_ + 1), 1,
                     static_cast<int>(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected node name");
    return text_.substr(start, pos_ - start);
  }

  double number() {
    skip_ws();
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) fail("expected number");
    if (!std::isfinite(v)) fail("number out of range");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  Vector vector() {
    expect('[');
    Vector v;
    v.push_back(number());
    while (accept(',')) v.push_back(number());
    expect(']');
    if (v.size() != space_.dim()) {
      fail("vector has " + std::to_string(v.size()) + " entries, space has dimension " +
           std::to_string(space_.dim()));
    }
    return v;
  }

  std::vector<LipschitzFn> node_list() {
    std::vector<LipschitzFn> out;
    out.push_back(parse_node());
    while (accept(',')) out.push_back(parse_node());
    return out;
  }

  template <class Build>
  LipschitzFn construct(std::size_t at, Build&& build) {
    try {
      return build();
    } catch (const InvalidInput& e) {
      pos_ = at;
      fail(e.what());
    } catch (const UnsupportedOperation& e) {
      pos_ = at;
      fail(e.what());
    }
  }

  LipschitzFn parse_node() {
    skip_ws();
    const std::size_t at = pos_;
    const std::string_view name = identifier();
    expect('(');
    LipschitzFn out = [&]() -> LipschitzFn {
      if (name == "linear") {
        Vector c = vector();
        return construct(at, [&] { return LipschitzFn::linear(space_, std::move(c)); });
      }
      if (name == "absdev") {
        Vector c = vector();
        expect(',');
        const double off = number();
        return construct(at, [&] { return LipschitzFn::abs_dev(space_, LinearFunctional(std::move(c)), off); });
      }
      if (name == "dist") {
        const double alpha = number();
        expect(',');
        Vector x0 = vector();
        return construct(at, [&] { return LipschitzFn::scaled_dist(space_, alpha, std::move(x0)); });
      }
      if (name == "smooth") {
        const double alpha = number();
        expect(',');
        const double eps = number();
        expect(',');
        Vector x0 = vector();
        return construct(at, [&] { return LipschitzFn::smooth_dist(space_, alpha, eps, std::move(x0)); });
      }
      if (name == "max") {
        auto kids = node_list();
        return construct(at, [&] { return LipschitzFn::max_of(std::move(kids)); });
      }
      if (name == "sum") {
        auto kids = node_list();
        return construct(at, [&] { return LipschitzFn::sum(std::move(kids)); });
      }
      if (name == "scale") {
        const double alpha = number();
        expect(',');
        LipschitzFn child = parse_node();
        return construct(at, [&] { return LipschitzFn::scale(alpha, std::move(child)); });
      }
      if (name == "shift") {
        LipschitzFn child = parse_node();
        expect(',');
        const double off = number();
        return construct(at, [&] { return LipschitzFn::shift(std::move(child), off); });
      }
      pos_ = at;
      fail("unknown node '" + std::string(name) + "'");
    }();
    expect(')');
    return out;
  }

  std::string_view text_;
  const Space& space_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_psi(const LipschitzFn& psi) {
  std::string out;
  append_node(out, psi);
  return out;
}

LipschitzFn parse_psi(std::string_view text, const Space& space) { return Parser(text, space).parse(); }

}  // namespace infid
