// Copyright 2026 The kpa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kpa/porter.hpp"

namespace kpa {

namespace {

// Follows the structure of the reference C implementation: b[0..k] is the
// word being stemmed and j marks the end of the stem during suffix tests.
class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word), k_(static_cast<int>(word.size()) - 1) {}

  std::string run() {
    if (k_ <= 1) return b_;
    step1ab();
    if (k_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    return b_.substr(0, static_cast<std::size_t>(k_ + 1));
  }

 private:
  char at(int i) const { return b_[static_cast<std::size_t>(i)]; }

  bool cons(int i) const {
    switch (at(i)) {
      case 'a': case 'e': case 'i': case 'o': case 'u': return false;
      case 'y': return i == 0 ? true : !cons(i - 1);
      default: return true;
    }
  }

  // Number of VC sequences in b[0..j].
  int m() const {
    int n = 0;
    int i = 0;
    while (true) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool double_consonant(int i) const {
    if (i < 1) return false;
    if (at(i) != at(i - 1)) return false;
    return cons(i);
  }

  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char c = at(i);
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(std::string_view s) {
    const int len = static_cast<int>(s.size());
    if (len > k_ + 1) return false;
    if (std::string_view(b_).substr(static_cast<std::size_t>(k_ + 1 - len), s.size()) != s) {
      return false;
    }
    j_ = k_ - len;
    return true;
  }

  void set_to(std::string_view s) {
    b_.replace(static_cast<std::size_t>(j_ + 1), static_cast<std::size_t>(k_ - j_), s);
    k_ = j_ + static_cast<int>(s.size());
    b_.resize(static_cast<std::size_t>(k_ + 1));
  }

  void r(std::string_view s) {
    if (m() > 0) set_to(s);
  }

  void step1ab() {
    if (at(k_) == 's') {
      if (ends("sses")) {
        k_ -= 2;
      } else if (ends("ies")) {
        set_to("i");
      } else if (at(k_ - 1) != 's') {
        --k_;
      }
    }
    if (ends("eed")) {
      if (m() > 0) --k_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k_ = j_;
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_consonant(k_)) {
        --k_;
        const char c = at(k_);
        if (c == 'l' || c == 's' || c == 'z') ++k_;
      } else if (j_ = k_, m() == 1 && cvc(k_)) {
        set_to("e");
      }
    }
    b_.resize(static_cast<std::size_t>(k_ + 1));
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[static_cast<std::size_t>(k_)] = 'i';
  }

  bool replace_first(std::initializer_list<std::pair<std::string_view, std::string_view>> rules) {
    for (const auto& [suffix, replacement] : rules) {
      if (ends(suffix)) {
        r(replacement);
        return true;
      }
    }
    return false;
  }

  void step2() {
    if (k_ < 1) return;
    switch (at(k_ - 1)) {
      case 'a': replace_first({{"ational", "ate"}, {"tional", "tion"}}); break;
      case 'c': replace_first({{"enci", "ence"}, {"anci", "ance"}}); break;
      case 'e': replace_first({{"izer", "ize"}}); break;
      case 'l':
        replace_first({{"bli", "ble"}, {"alli", "al"}, {"entli", "ent"}, {"eli", "e"},
                       {"ousli", "ous"}});
        break;
      case 'o': replace_first({{"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}}); break;
      case 's':
        replace_first({{"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"},
                       {"ousness", "ous"}});
        break;
      case 't': replace_first({{"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}}); break;
      case 'g': replace_first({{"logi", "log"}}); break;
      default: break;
    }
    b_.resize(static_cast<std::size_t>(k_ + 1));
  }

  void step3() {
    switch (at(k_)) {
      case 'e': replace_first({{"icate", "ic"}, {"ative", ""}, {"alize", "al"}}); break;
      case 'i': replace_first({{"iciti", "ic"}}); break;
      case 'l': replace_first({{"ical", "ic"}, {"ful", ""}}); break;
      case 's': replace_first({{"ness", ""}}); break;
      default: break;
    }
    b_.resize(static_cast<std::size_t>(k_ + 1));
  }

  void step4() {
    if (k_ < 1) return;
    auto any = [this](std::initializer_list<std::string_view> suffixes) {
      for (auto s : suffixes) {
        if (ends(s)) return true;
      }
      return false;
    };
    bool matched = false;
    switch (at(k_ - 1)) {
      case 'a': matched = any({"al"}); break;
      case 'c': matched = any({"ance", "ence"}); break;
      case 'e': matched = any({"er"}); break;
      case 'i': matched = any({"ic"}); break;
      case 'l': matched = any({"able", "ible"}); break;
      case 'n': matched = any({"ant", "ement", "ment", "ent"}); break;
      case 'o':
        if (ends("ion") && j_ >= 0 && (at(j_) == 's' || at(j_) == 't')) {
          matched = true;
        } else {
          matched = any({"ou"});
        }
        break;
      case 's': matched = any({"ism"}); break;
      case 't': matched = any({"ate", "iti"}); break;
      case 'u': matched = any({"ous"}); break;
      case 'v': matched = any({"ive"}); break;
      case 'z': matched = any({"ize"}); break;
      default: break;
    }
    if (matched && m() > 1) k_ = j_;
    b_.resize(static_cast<std::size_t>(k_ + 1));
  }

  void step5() {
    j_ = k_;
    if (at(k_) == 'e') {
      const int a = m();
      if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
    }
    if (at(k_) == 'l' && double_consonant(k_) && m() > 1) --k_;
    b_.resize(static_cast<std::size_t>(k_ + 1));
  }

  std::string b_;
  int k_;
  int j_ = 0;
};

}  // namespace

std::string porter_stem(std::string_view word) { return Stemmer(word).run(); }

}  // namespace kpa
