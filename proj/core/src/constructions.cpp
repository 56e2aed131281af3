#include "ptsep/constructions.hpp"

#include <functional>

#include "ptsep/error.hpp"

namespace ptsep {

namespace {

Word concat(std::initializer_list<const Word*> parts) {
  Word w;
  for (const Word* p : parts) {
    w.insert(w.end(), p->begin(), p->end());
  }
  return w;
}

// u_0 = ε, u_k = u_{k−1} b a_k u_{k−1}, with b = 0 and a_k = k.
Word exp_u(std::size_t m) {
  Word u;
  for (std::size_t k = 1; k <= m; ++k) {
    Word next = u;
    next.push_back(0);
    next.push_back(static_cast<Symbol>(k));
    next.insert(next.end(), u.begin(), u.end());
    u = std::move(next);
  }
  return u;
}

Alphabet exp_alphabet(std::size_t m) {
  Alphabet sigma{"b"};
  for (std::size_t i = 1; i <= m; ++i) {
    sigma.push_back("a" + std::to_string(i));
  }
  return sigma;
}

// A_m over `sigma`, whose first m+1 letters are b, a1..am.
AutomatonBuilder exp_left(const Alphabet& sigma, std::size_t m) {
  AutomatonBuilder a(sigma, m + 1);
  for (StateId i = 0; i <= m; ++i) {
    a.set_initial(i);
  }
  a.set_final(0);
  for (StateId i = 1; i <= m; ++i) {
    a.add_transition(i, Symbol{0}, i);
    for (Symbol j = 1; j < i; ++j) {
      a.add_transition(i, j, i);
    }
    for (StateId t = 0; t < i; ++t) {
      a.add_transition(i, Symbol{i}, t);
    }
  }
  return a;
}

} // namespace

FamilyInstance gen_quadratic(std::size_t n) {
  if (n < 4 || n % 2 != 0) {
    throw Error(ErrorKind::precondition, "quadratic family needs an even n >= 4, got " +
                                             std::to_string(n));
  }
  const Alphabet sigma{"a", "b"};
  const Symbol a = 0;
  const Symbol b = 1;
  // State i of the construction is id i−1.
  AutomatonBuilder left(sigma, n);
  for (StateId i = 0; i + 2 < n; ++i) {
    left.add_transition(i, a, i + 1);
    left.add_transition(i, b, i);
  }
  left.add_transition(static_cast<StateId>(n - 2), b, static_cast<StateId>(n - 1));
  left.add_transition(static_cast<StateId>(n - 1), b, static_cast<StateId>(n - 2));
  for (StateId i = 0; i + 1 < n; ++i) {
    left.set_initial(i);
  }
  left.set_final(static_cast<StateId>(n - 2));

  AutomatonBuilder right(sigma, n);
  for (StateId i = 0; i + 1 < n; ++i) {
    right.add_transition(i, b, i + 1);
  }
  right.add_transition(static_cast<StateId>(n - 1), a, 0);
  right.set_initial(0);
  for (StateId i = 1; i < n; i += 2) {
    right.set_final(i);
  }

  Word w;
  for (std::size_t r = 0; r + 2 < n; ++r) {
    w.insert(w.end(), n - 1, b);
    w.push_back(a);
  }
  w.insert(w.end(), n, b);
  Tower tower{TowerRelation::prefix, {}};
  std::size_t trailing = 0;
  for (std::size_t len = 0; len <= w.size(); ++len) {
    if (len > 0) {
      trailing = w[len - 1] == b ? trailing + 1 : 0;
    }
    tower.elements.push_back(
        {Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len)),
         trailing % 2 == 0 ? Side::left : Side::right});
  }
  return {"quadratic", n, left.build(), right.build(true), std::move(tower), n * n - n + 1};
}

FamilyInstance gen_exp(std::size_t m) {
  const Alphabet sigma = exp_alphabet(m);
  AutomatonBuilder right(sigma, 2);
  right.set_initial(0);
  right.set_final(1);
  for (Symbol s = 0; s < sigma.size(); ++s) {
    right.add_transition(0, s, 0);
  }
  right.add_transition(0, Symbol{0}, 1);

  Word w = exp_u(m);
  w.push_back(0);
  Tower tower{TowerRelation::prefix, {}};
  for (std::size_t len = 0; len <= w.size(); ++len) {
    tower.elements.push_back({Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len)),
                              len % 2 == 0 ? Side::left : Side::right});
  }
  return {"exp", m, exp_left(sigma, m).build(), right.build(), std::move(tower),
          std::size_t{2} << m};
}

FamilyInstance gen_2exp(std::size_t m) {
  if (m < 1) {
    throw Error(ErrorKind::precondition, "2exp family needs m >= 1");
  }
  Alphabet sigma = exp_alphabet(m);
  const auto c = [m](std::size_t k) { return static_cast<Symbol>(m + k); };
  for (std::size_t k = 1; k < m; ++k) {
    sigma.push_back("c" + std::to_string(k));
  }
  AutomatonBuilder left = exp_left(sigma, m);
  for (std::size_t k = 1; k < m; ++k) {
    for (StateId q = 1; q <= m; ++q) {
      left.add_transition(0, c(k), q);
    }
  }

  AutomatonBuilder right(sigma, m + 1);
  right.set_final(0);
  for (StateId k = 1; k <= m; ++k) {
    right.set_initial(k);
    for (Symbol s = 0; s <= m; ++s) {
      right.add_transition(k, s, k);
    }
    for (std::size_t j = 1; j + 2 <= k; ++j) {
      right.add_transition(k, c(j), k);
    }
    if (k >= 2) {
      for (StateId i = 1; i < k; ++i) {
        right.add_transition(k, c(k - 1), i);
      }
    }
  }
  right.add_transition(1, Symbol{0}, 0);

  Word omega = exp_u(m);
  for (std::size_t k = 1; k < m; ++k) {
    const Word half = omega;
    omega.push_back(c(k));
    omega.insert(omega.end(), half.begin(), half.end());
  }
  omega.push_back(0);
  Tower tower{TowerRelation::prefix, {{Word{}, Side::left}}};
  for (std::size_t len = 1; len <= omega.size(); ++len) {
    const Symbol last = omega[len - 1];
    if (last > m) {
      continue;
    }
    tower.elements.push_back({Word(omega.begin(), omega.begin() + static_cast<std::ptrdiff_t>(len)),
                              last == 0 ? Side::right : Side::left});
  }
  const std::size_t p = std::size_t{1} << m;
  return {"2exp", m, left.build(), right.build(), std::move(tower), p * (p - 1) + 2};
}

std::string expdfa_letter(std::size_t i, std::size_t j) {
  return "a" + std::to_string(i) + "_" + std::to_string(j);
}

FamilyInstance gen_expdfa(std::size_t n) {
  if (n < 1) {
    throw Error(ErrorKind::precondition, "expdfa family needs n >= 1");
  }
  Alphabet sigma{"b"};
  // letter(i, j) = id of a_{i,j}; ids follow i, then j.
  std::vector<std::vector<Symbol>> letter(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      letter[i].push_back(static_cast<Symbol>(sigma.size()));
      sigma.push_back(expdfa_letter(i, j));
    }
  }
  const Symbol b = 0;

  AutomatonBuilder left(sigma, n + 1);
  left.set_initial(static_cast<StateId>(n));
  left.set_final(0);
  for (StateId i = 1; i <= n; ++i) {
    for (StateId j = 0; j < i; ++j) {
      left.add_transition(i, letter[i][j], j);
    }
  }
  for (StateId k = 1; k <= n; ++k) {
    left.add_transition(k, b, k);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 0; j < i && j < k; ++j) {
        if (i != k) {
          left.add_transition(k, letter[i][j], k);
        }
      }
    }
  }

  AutomatonBuilder right(sigma, 2);
  right.set_initial(0);
  right.set_final(1);
  for (Symbol s = 0; s < sigma.size(); ++s) {
    right.add_transition(0, s, s == b ? 1 : 0);
    right.add_transition(1, s, s == b ? 1 : 0);
  }

  // α_{k,j} = a_{k,j} … a_{k,0}; u_k = u_{k−1} b α_{k,k−1} u_{k−1}.
  const auto alpha = [&](std::size_t k, std::size_t j) {
    Word w;
    for (std::size_t t = j + 1; t-- > 0;) {
      w.push_back(letter[k][t]);
    }
    return w;
  };
  std::vector<Word> u(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    const Word a = alpha(k, k - 1);
    const Word bw{b};
    u[k] = concat({&u[k - 1], &bw, &a, &u[k - 1]});
  }
  std::function<Word(std::size_t, std::size_t)> w_of = [&](std::size_t k, std::size_t i) -> Word {
    if (i == 0) {
      return {letter[k][0]};
    }
    if (i == 1) {
      return {letter[k][0], b};
    }
    std::size_t j = 0;
    while ((std::size_t{2} << j) <= i) {
      ++j;
    }
    const Word a = alpha(k, j);
    const Word bw{b};
    const Word rest = w_of(j, i - (std::size_t{1} << j));
    return concat({&a, &u[j - 1], &bw, &rest});
  };
  Tower tower{TowerRelation::subsequence, {}};
  const std::size_t height = std::size_t{1} << n;
  for (std::size_t i = 0; i < height; ++i) {
    tower.elements.push_back({w_of(n, i), i % 2 == 0 ? Side::left : Side::right});
  }
  return {"expdfa", n, left.build(true), right.build(true), std::move(tower), height};
}

} // namespace ptsep
