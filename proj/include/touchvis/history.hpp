#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <utility>
#include <vector>

#include "touchvis/error.hpp"
#include "touchvis/view_state.hpp"

namespace touchvis {

inline constexpr std::size_t kDefaultHistoryCap = 100;

/// Snapshot-based undo/redo. `initial` is kept apart from the bounded past
/// stack so reset can always reach it.
struct History {
  ViewState initial;
  ViewState current;
  std::deque<ViewState> past;
  std::vector<ViewState> future;
  std::size_t cap = kDefaultHistoryCap;

  static History start(ViewState initial, std::size_t cap = kDefaultHistoryCap) {
    History h;
    h.initial = initial;
    h.current = std::move(initial);
    h.cap = cap;
    return h;
  }

  bool can_undo() const { return !past.empty(); }
  bool can_redo() const { return !future.empty(); }

  friend bool operator==(const History&, const History&) = default;
};

inline History push_state(History h, ViewState s) {
  h.past.push_back(std::move(h.current));
  h.current = std::move(s);
  h.future.clear();
  // The bottom entry is where the session started; evict above it.
  while (h.past.size() > std::max<std::size_t>(h.cap, 1)) h.past.erase(h.past.begin() + 1);
  return h;
}

inline History undo(History h) {
  if (h.past.empty()) throw Error(ErrorCode::NothingToUndo, "nothing to undo");
  h.future.push_back(std::move(h.current));
  h.current = std::move(h.past.back());
  h.past.pop_back();
  return h;
}

inline History redo(History h) {
  if (h.future.empty()) throw Error(ErrorCode::NothingToRedo, "nothing to redo");
  h.past.push_back(std::move(h.current));
  h.current = std::move(h.future.back());
  h.future.pop_back();
  return h;
}

/// Returns to the initial view as a new, undoable entry. No-op at the initial view.
inline History reset_view(History h) {
  if (h.current == h.initial) return h;
  ViewState initial = h.initial;
  return push_state(std::move(h), std::move(initial));
}

}  // namespace touchvis
