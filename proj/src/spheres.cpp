#include "qsphere/spheres.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace qsphere {

std::size_t acting_slot(std::size_t n, std::size_t m) {
  if (m < 1 || m > n + 1) throw Error(ErrorCode::InvalidArgument, "generator index out of range");
  return m == 1 ? n : n + 1 - m;
}

GeneratorSet build_generators(std::size_t n, double q) {
  if (n < 1 || n > 31) throw Error(ErrorCode::InvalidArgument, "n must lie in [1, 31]");
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::InvalidArgument, "q must lie in (0,1)");
  GeneratorSet g;
  g.n = n;
  g.q = q;

  Coeff diag = Coeff::one();
  for (std::size_t j = 0; j < n; ++j) diag = diag * Coeff::pow(static_cast<int>(j), 1, 0);
  g.Y.push_back(AlgebraElement::single(n, Shift{1, std::vector<long>(n, 0)}, diag));

  for (std::size_t m = 2; m <= n + 1; ++m) {
    const std::size_t j = acting_slot(n, m);
    Coeff c = Coeff::sqrt(static_cast<int>(j), 0);
    for (std::size_t l = 0; l < j; ++l) c = Coeff::pow(static_cast<int>(l), 1, 0) * c;
    Shift s{1, std::vector<long>(n, 0)};
    s.x[j] = -1;
    g.Y.push_back(AlgebraElement::single(n, std::move(s), std::move(c)));
  }
  return g;
}

std::string Word::name() const {
  if (letters.empty()) return "1";
  std::string out;
  for (const auto& l : letters) {
    if (!out.empty()) out += '.';
    out += 'Y' + std::to_string(l.m);
    if (l.star) out += '*';
  }
  return out;
}

void for_each_word(const GeneratorSet& gens, std::size_t L,
                   const std::function<bool(const Word&)>& visit) {
  std::vector<std::pair<Letter, AlgebraElement>> alphabet;
  for (std::size_t m = 1; m <= gens.n + 1; ++m) {
    alphabet.push_back({Letter{m, false}, gens.gen(m)});
    alphabet.push_back({Letter{m, true}, adjoint(gens.gen(m))});
  }

  std::vector<Word> level{Word{{}, AlgebraElement::unit(gens.n)}};
  if (!visit(level.front())) return;
  for (std::size_t len = 1; len <= L; ++len) {
    std::vector<Word> next;
    const bool keep = len < L;
    if (keep) next.reserve(level.size() * alphabet.size());
    for (const auto& w : level) {
      for (const auto& [letter, elem] : alphabet) {
        Word ext{w.letters, convolve(w.element, elem)};
        ext.letters.push_back(letter);
        if (!visit(ext)) return;
        if (keep) next.push_back(std::move(ext));
      }
    }
    level = std::move(next);
  }
}

std::vector<Word> words_up_to(const GeneratorSet& gens, std::size_t L) {
  std::vector<Word> out;
  for_each_word(gens, L, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

namespace {

class WordParser {
 public:
  WordParser(const GeneratorSet& gens, std::string_view text) : gens_(gens), text_(text) {}

  AlgebraElement parse() {
    AlgebraElement total(gens_.n);
    skip_space();
    if (at_end()) fail("empty expression");
    bool first = true;
    while (!at_end()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      total += term(sign);
      first = false;
      skip_space();
    }
    return total;
  }

 private:
  AlgebraElement term(double sign) {
    double scale = sign;
    bool have_factor = false;
    if (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
      scale *= number();
      have_factor = true;
    }
    AlgebraElement prod = AlgebraElement::unit(gens_.n);
    while (true) {
      skip_separators();
      if (at_end() || peek() != 'Y') break;
      prod = convolve(prod, letter());
      have_factor = true;
    }
    if (!have_factor) fail("expected a coefficient or a letter");
    return Complex(scale) * prod;
  }

  AlgebraElement letter() {
    ++pos_;  // 'Y'
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected a generator index after 'Y'");
    std::size_t m = 0;
    std::from_chars(text_.data() + start, text_.data() + pos_, m);
    if (m < 1 || m > gens_.n + 1) {
      fail("generator index " + std::to_string(m) + " outside 1.." + std::to_string(gens_.n + 1));
    }
    const bool star = !at_end() && peek() == '*';
    if (star) ++pos_;
    return star ? adjoint(gens_.gen(m)) : gens_.gen(m);
  }

  double number() {
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return v;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  void skip_separators() {
    while (!at_end() && (std::isspace(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in \"" +
                                           std::string(text_) + "\"");
  }

  const GeneratorSet& gens_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AlgebraElement parse_word_expression(const GeneratorSet& gens, std::string_view text) {
  return WordParser(gens, text).parse();
}

}  // namespace qsphere
