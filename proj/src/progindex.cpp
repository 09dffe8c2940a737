#include "dpi/progindex.hpp"

#include "dpi/package_ops.hpp"

namespace dpi {

ProgramIndex::ProgramIndex(const OoProgram& program) : prog(program) {
  const Package& p = prog.package;
  for (size_t ci = 0; ci < p.classes.size(); ci++) {
    const ClassDef& cd = p.classes[ci];
    ClassInfo info;
    info.name = cd.name;
    info.is_client = cd.is_client;
    for (auto& fd : cd.fields) {
      info.field_index[fd.name] = (int)info.fields.size();
      info.fields.push_back({fd.name, fd.type, fd.hidden, fd.implicit});
      any_field_.emplace(fd.name, fd.type);
    }
    class_idx_[cd.name] = (int)ci;
    if (cd.is_client) client_class = (int)ci;
    classes.push_back(std::move(info));
  }

  locs.resize(p.n_locs);
  out_edges.resize(p.n_locs);
  for (auto& cd : p.classes) {
    for (auto* m : cd.all_methods()) {
      for (int s = 0; s < m->cfa.n_states; s++) {
        int gl = m->cfa.first_loc + s;
        locs[gl] = {m, s, s == m->cfa.final};
      }
      for (auto& e : m->cfa.edges)
        out_edges[m->cfa.first_loc + e.src].push_back(&e);
    }
  }
  if (client_class >= 0) loop_head = client_loop_head(prog);
}

}  // namespace dpi
