#include "lclcx/reduction.hpp"

#include <algorithm>

#include "lclcx/errors.hpp"
#include "lclcx/parallel.hpp"

namespace lclcx {

bool phi_facet_ok(const Complex& k, const SetFamily& fam_left, const SetFamily& fam_mid,
                  const SetFamily& fam_right) {
  auto side_ok = [&](const SetFamily& fa, const SetFamily& fb, int name_left,
                     int name_right) {
    // exists S in fa, for all S' in fb, exists v' in S', for all v in S:
    // {(p_left, v), (p_right, v')} in K
    for (const auto& s : fa.sets) {
      bool all_sp = true;
      for (const auto& sp : fb.sets) {
        bool found_vp = false;
        for (const auto& vp : sp) {
          bool all_v = true;
          for (const auto& v : s) {
            if (!is_simplex(k, {Vertex{ProcessName{name_left}, v},
                                Vertex{ProcessName{name_right}, vp}})) {
              all_v = false;
              break;
            }
          }
          if (all_v) {
            found_vp = true;
            break;
          }
        }
        if (!found_vp) {
          all_sp = false;
          break;
        }
      }
      if (all_sp) return true;
    }
    return false;
  };
  return side_ok(fam_left, fam_mid, -1, 0) && side_ok(fam_mid, fam_right, 0, 1);
}

SetFamily phi_apply_map(const MapTable& table, const SetFamily& fam) {
  std::vector<std::vector<Value>> sets;
  for (const auto& s : fam.sets) {
    std::vector<Value> img;
    for (const auto& v : s) img.push_back(Value::label(table.at(v)));
    sets.push_back(std::move(img));
  }
  return SetFamily::canonical(std::move(sets));
}

namespace {

std::vector<NodeState> view_states(const Value& v) {
  switch (v.tag()) {
    case Value::Tag::id_label:
      return {NodeState{v.as_id_label().id, v.as_id_label().label}};
    case Value::Tag::view: return v.as_view().states;
    default: fail(Errc::no_ids, "value is not an ID-carrying view: " + v.str());
  }
}

}  // namespace

FImage f_of_view(const Value& view, int R) {
  auto states = view_states(view);
  if (states.empty() || !states.front().id) fail(Errc::no_ids, "view carries no IDs");
  Label lab = states.front().label;
  for (const auto& s : states) {
    if (!s.id) fail(Errc::no_ids, "view carries no IDs");
    if (s.label != lab)
      fail(Errc::semantic_error, "the gluing map needs a uniform input label");
  }
  for (size_t i = 0; i + 1 < states.size(); ++i)
    if (*states[i].id >= *states[i + 1].id)
      fail(Errc::semantic_error, "view IDs must be strictly increasing");
  const int lo = *states.front().id;
  const int hi = *states.back().id;

  FImage out;
  std::vector<std::vector<Value>> sets;
  for (int b = hi + 1; b <= R; ++b) {
    std::vector<Value> member;
    for (int a = 1; a < lo; ++a) {
      std::vector<NodeState> ext;
      ext.push_back({a, lab});
      ext.insert(ext.end(), states.begin(), states.end());
      ext.push_back({b, lab});
      member.push_back(Value::view(std::move(ext)));
    }
    if (member.empty()) out.id_range_exhausted = true;
    sets.push_back(std::move(member));
  }
  if (sets.empty()) out.id_range_exhausted = true;
  out.family = SetFamily::canonical(std::move(sets));
  return out;
}

namespace {

int mask_of_set(int k, const std::vector<Value>& set) {
  int m = 0;
  for (const auto& v : set) {
    if (v.tag() != Value::Tag::label)
      fail(Errc::semantic_error, "color codes take label sets");
    int c = 0;
    try {
      c = std::stoi(v.as_label());
    } catch (...) {
      fail(Errc::semantic_error, "color labels must be 1..k, got " + v.as_label());
    }
    if (c < 1 || c > k)
      fail(Errc::semantic_error, "color labels must be 1..k, got " + v.as_label());
    m |= 1 << (c - 1);
  }
  return m;
}

}  // namespace

ColorCode color_code_encode(int k, const SetFamily& family_of_label_sets) {
  if (k < 1 || k > 20) fail(Errc::too_large, "color codes support 1 <= k <= 20");
  ColorCode out;
  out.k = k;
  mpz_class mask = 0;
  for (const auto& s : family_of_label_sets.sets)
    mpz_setbit(mask.get_mpz_t(), static_cast<mp_bitcnt_t>(mask_of_set(k, s)));
  out.code = mask + 1;
  return out;
}

SetFamily color_code_decode(const ColorCode& code) {
  if (code.k < 1 || code.k > 20) fail(Errc::too_large, "color codes support 1 <= k <= 20");
  mpz_class mask = code.code - 1;
  if (mask < 0 || mpz_sizeinbase(mask.get_mpz_t(), 2) > (1u << code.k))
    fail(Errc::semantic_error, "code out of range for k");
  std::vector<std::vector<Value>> sets;
  for (int sm = 0; sm < (1 << code.k); ++sm) {
    if (!mpz_tstbit(mask.get_mpz_t(), static_cast<mp_bitcnt_t>(sm))) continue;
    std::vector<Value> set;
    for (int c = 1; c <= code.k; ++c)
      if (sm >> (c - 1) & 1) set.push_back(Value::label(std::to_string(c)));
    sets.push_back(std::move(set));
  }
  return SetFamily::canonical(std::move(sets));
}

AlgorithmTable reduce_once(const AlgorithmTable& delta_t, int threads) {
  if (delta_t.mode.kind != IdMode::Kind::increasing)
    fail(Errc::semantic_error, "round reduction consumes increasing-ID tables");
  if (delta_t.rounds < 1) fail(Errc::semantic_error, "round reduction needs t >= 1");
  const int R = delta_t.mode.R;
  const int t = delta_t.rounds;
  const int k = static_cast<int>(delta_t.out_labels.size());
  {
    std::vector<Label> expect;
    for (int c = 1; c <= k; ++c) expect.push_back(std::to_string(c));
    std::sort(expect.begin(), expect.end());
    if (delta_t.out_labels != expect)
      fail(Errc::semantic_error, "round reduction needs color labels 1..k");
  }

  MapTable table;
  table.mapping = delta_t.entries;

  // radius-(t-1) views: strictly increasing ID windows with the unit label
  const int len = 2 * (t - 1) + 1;
  std::vector<std::vector<int>> windows;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(cur.size()) == len) {
      windows.push_back(cur);
      return;
    }
    for (int x = next; x <= R; ++x) {
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(1);

  auto view_of = [&](const std::vector<int>& ids) {
    if (ids.size() == 1) return Value::id_label(ids[0], kUnitLabel);
    std::vector<NodeState> st;
    for (int x : ids) st.push_back({x, kUnitLabel});
    return Value::view(std::move(st));
  };

  AlgorithmTable reduced;
  reduced.rounds = t - 1;
  reduced.mode = IdMode::increasing(R);
  std::vector<ColorCode> codes(windows.size());
  parallel_for(windows.size(), threads, [&](size_t i) {
    FImage img = f_of_view(view_of(windows[i]), R);
    codes[i] = color_code_encode(k, phi_apply_map(table, img.family));
  });
  std::map<std::vector<int>, size_t> widx;
  for (size_t i = 0; i < windows.size(); ++i) {
    reduced.entries[view_of(windows[i])] = codes[i].str();
    widx[windows[i]] = i;
  }
  {
    std::vector<Label> used;
    for (const auto& c : codes) used.push_back(c.str());
    std::sort(used.begin(), used.end(),
              [](const Label& a, const Label& b) { return mpz_class(a) < mpz_class(b); });
    used.erase(std::unique(used.begin(), used.end()), used.end());
    reduced.out_labels = std::move(used);
  }

  // verify before returning: adjacent codes must differ on every facet of
  // the (t-1)-round complex, and on every compatible pair (the boundary
  // pairs included)
  std::vector<std::vector<int>> tuples;
  cur.clear();
  std::function<void(int, int)> rec2 = [&](int next, int want) {
    if (static_cast<int>(cur.size()) == want) {
      tuples.push_back(cur);
      return;
    }
    for (int x = next; x <= R; ++x) {
      cur.push_back(x);
      rec2(x + 1, want);
      cur.pop_back();
    }
  };
  rec2(1, len + 2);
  std::vector<uint8_t> facet_ok(tuples.size(), 1);
  parallel_for(tuples.size(), threads, [&](size_t i) {
    const auto& w = tuples[i];
    std::vector<int> a(w.begin(), w.begin() + len);
    std::vector<int> b(w.begin() + 1, w.begin() + 1 + len);
    std::vector<int> c(w.begin() + 2, w.begin() + 2 + len);
    const auto& ca = codes[widx.at(a)];
    const auto& cb = codes[widx.at(b)];
    const auto& cc = codes[widx.at(c)];
    if (ca.code == cb.code || cb.code == cc.code) facet_ok[i] = 0;
  });
  for (size_t i = 0; i < tuples.size(); ++i)
    if (!facet_ok[i]) {
      std::string ids;
      for (int x : tuples[i]) ids += std::to_string(x) + " ";
      fail(Errc::verification_failed, "reduced table repeats a color on facet ids " + ids);
    }
  // pairs: overlapping windows merged into len+1 increasing ids
  tuples.clear();
  rec2(1, len + 1);
  for (const auto& w : tuples) {
    std::vector<int> a(w.begin(), w.begin() + len);
    std::vector<int> b(w.begin() + 1, w.begin() + 1 + len);
    if (codes[widx.at(a)].code == codes[widx.at(b)].code) {
      std::string ids;
      for (int x : w) ids += std::to_string(x) + " ";
      fail(Errc::verification_failed, "reduced table repeats a color on pair ids " + ids);
    }
  }
  return reduced;
}

std::string TowerValue::str() const {
  if (exact) return exact->get_str();
  return "2^^" + std::to_string(height);
}

TowerValue tower(int h) {
  if (h < 0) fail(Errc::semantic_error, "tower height must be nonnegative");
  TowerValue v;
  v.height = h;
  if (h <= 5) v.exact = tower_exact(h);
  return v;
}

mpz_class tower_exact(int h) {
  if (h < 0) fail(Errc::semantic_error, "tower height must be nonnegative");
  if (h > 5) fail(Errc::too_large, "tower(h) is only materialized for h <= 5");
  mpz_class v = 1;
  for (int i = 0; i < h; ++i) {
    unsigned long e = v.get_ui();  // fits: tower(4) = 65536
    mpz_class next = 1;
    mpz_mul_2exp(next.get_mpz_t(), next.get_mpz_t(), e);
    v = next;
  }
  return v;
}

int log_star(const mpz_class& n) {
  if (n < 1) fail(Errc::semantic_error, "log* needs n >= 1");
  for (int h = 0; h <= 5; ++h)
    if (tower_exact(h) >= n) return h;
  // n > 2^65536; any value that fits in memory is far below tower(6)
  return 6;
}

int linial_bound(const mpz_class& n) {
  if (n < 3) fail(Errc::semantic_error, "the bound is stated for n >= 3");
  int ls = log_star(n);
  return (ls + 1) / 2 - 1;
}

}  // namespace lclcx
