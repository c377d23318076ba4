// Copyright 2026 The wmfie Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <unordered_map>

#include "wmfie/mesh.hpp"

namespace wmfie
{

namespace
{

// Next line that is neither empty nor an OFF comment.
bool next_content_line(std::istream &in, std::string &line)
{
  while (std::getline(in, line))
  {
    auto hash = line.find('#');
    if (hash != std::string::npos)
    {
      line.erase(hash);
    }
    if (line.find_first_not_of(" \t\r") != std::string::npos)
    {
      return true;
    }
  }
  return false;
}

[[noreturn]] void parse_error(const std::string &fmt, const std::string &msg)
{
  fail(ErrorCode::Parse, fmt + " parse error: " + msg);
}

}  // namespace

TriangleMesh parse_off(std::istream &in)
{
  std::string line;
  if (!next_content_line(in, line))
  {
    parse_error("OFF", "empty input");
  }
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic != "OFF")
  {
    parse_error("OFF", "missing OFF header");
  }
  long nv = -1, nf = -1, ne = 0;
  if (!(header >> nv))
  {
    if (!next_content_line(in, line))
    {
      parse_error("OFF", "missing counts line");
    }
    header = std::istringstream(line);
    header >> nv;
  }
  if (!(header >> nf >> ne) || nv < 0 || nf < 0)
  {
    parse_error("OFF", "malformed counts line");
  }
  std::vector<Vec3> vertices(nv);
  for (long i = 0; i < nv; i++)
  {
    if (!next_content_line(in, line))
    {
      parse_error("OFF", "unexpected end of file in vertex list");
    }
    std::istringstream ls(line);
    if (!(ls >> vertices[i][0] >> vertices[i][1] >> vertices[i][2]))
    {
      parse_error("OFF", "malformed vertex line " + std::to_string(i));
    }
  }
  std::vector<TriangleMesh::Triangle> triangles;
  triangles.reserve(nf);
  for (long f = 0; f < nf; f++)
  {
    if (!next_content_line(in, line))
    {
      parse_error("OFF", "unexpected end of file in face list");
    }
    std::istringstream ls(line);
    int count = 0;
    ls >> count;
    std::vector<int> ids(count);
    for (auto &id : ids)
    {
      if (!(ls >> id))
      {
        parse_error("OFF", "malformed face line " + std::to_string(f));
      }
    }
    if (count < 3)
    {
      parse_error("OFF", "face " + std::to_string(f) + " has fewer than 3 vertices");
    }
    // Polygons are fanned from their first vertex.
    for (int k = 1; k + 1 < count; k++)
    {
      triangles.push_back({ids[0], ids[k], ids[k + 1]});
    }
  }
  return TriangleMesh::build(std::move(vertices), std::move(triangles));
}

TriangleMesh parse_gmsh(std::istream &in)
{
  std::string line;
  std::vector<Vec3> vertices;
  std::unordered_map<long, int> node_index;
  std::vector<std::array<long, 3>> raw_tris;
  bool saw_nodes = false, saw_elements = false;
  while (std::getline(in, line))
  {
    if (line.rfind("$MeshFormat", 0) == 0)
    {
      if (!std::getline(in, line))
      {
        parse_error("Gmsh", "truncated $MeshFormat");
      }
      std::istringstream ls(line);
      double version = 0.0;
      int file_type = -1;
      ls >> version >> file_type;
      if (version < 2.0 || version >= 3.0 || file_type != 0)
      {
        parse_error("Gmsh", "only ASCII format version 2 is supported");
      }
    }
    else if (line.rfind("$Nodes", 0) == 0)
    {
      long n = 0;
      if (!std::getline(in, line) || !(std::istringstream(line) >> n))
      {
        parse_error("Gmsh", "malformed $Nodes count");
      }
      for (long i = 0; i < n; i++)
      {
        if (!std::getline(in, line))
        {
          parse_error("Gmsh", "truncated $Nodes section");
        }
        std::istringstream ls(line);
        long id;
        Vec3 p;
        if (!(ls >> id >> p[0] >> p[1] >> p[2]))
        {
          parse_error("Gmsh", "malformed node line " + std::to_string(i));
        }
        node_index[id] = static_cast<int>(vertices.size());
        vertices.push_back(p);
      }
      saw_nodes = true;
    }
    else if (line.rfind("$Elements", 0) == 0)
    {
      long n = 0;
      if (!std::getline(in, line) || !(std::istringstream(line) >> n))
      {
        parse_error("Gmsh", "malformed $Elements count");
      }
      for (long i = 0; i < n; i++)
      {
        if (!std::getline(in, line))
        {
          parse_error("Gmsh", "truncated $Elements section");
        }
        std::istringstream ls(line);
        long id, type, ntags;
        if (!(ls >> id >> type >> ntags))
        {
          parse_error("Gmsh", "malformed element line " + std::to_string(i));
        }
        for (long k = 0; k < ntags; k++)
        {
          long tag;
          ls >> tag;
        }
        if (type != 2)
        {
          continue;  // only 3-node triangles form the surface
        }
        std::array<long, 3> nodes;
        if (!(ls >> nodes[0] >> nodes[1] >> nodes[2]))
        {
          parse_error("Gmsh", "malformed triangle element " + std::to_string(id));
        }
        raw_tris.push_back(nodes);
      }
      saw_elements = true;
    }
  }
  if (!saw_nodes || !saw_elements)
  {
    parse_error("Gmsh", "missing $Nodes or $Elements section");
  }
  std::vector<TriangleMesh::Triangle> triangles;
  triangles.reserve(raw_tris.size());
  for (const auto &rt : raw_tris)
  {
    TriangleMesh::Triangle t;
    for (int k = 0; k < 3; k++)
    {
      auto it = node_index.find(rt[k]);
      if (it == node_index.end())
      {
        parse_error("Gmsh", "element references unknown node " + std::to_string(rt[k]));
      }
      t[k] = it->second;
    }
    triangles.push_back(t);
  }
  return TriangleMesh::build(std::move(vertices), std::move(triangles));
}

TriangleMesh load_mesh(const std::filesystem::path &path, MeshFormat format)
{
  std::ifstream in(path);
  if (!in)
  {
    fail(ErrorCode::Io, "cannot open mesh file '" + path.string() + "'");
  }
  return format == MeshFormat::Off ? parse_off(in) : parse_gmsh(in);
}

void write_off(const TriangleMesh &mesh, std::ostream &out)
{
  out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_triangles() << ' ' << mesh.num_edges()
      << '\n';
  out << std::setprecision(17);
  for (const auto &v : mesh.vertices())
  {
    out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  }
  for (const auto &t : mesh.triangles())
  {
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
}

}  // namespace wmfie
