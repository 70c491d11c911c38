"""
Vertex cover on triangle-free graphs, seen as a Gini/k-means instance
"""

from ginipart.hardness import (
    build_hardness_instance,
    check_cover_bound,
    complete_bipartite,
    generate_triangle_free,
    min_vertex_cover,
    path_graph,
    write_edge_list,
)

## Edge vectors
g = path_graph(3)
print(build_hardness_instance(g, 1).vectors.vectors)

## The cost bound at the minimum cover size
for g in (path_graph(3), complete_bipartite(2, 3), generate_triangle_free(7, 8, 0.4)):
    size, cover = min_vertex_cover(g)
    rep = check_cover_bound(g)
    print(f"|V|={g.num_vertices} |E|={g.num_edges} cover={cover} KM_opt={rep.kmeans_opt:.3f} "
          f"<= |E|-k={rep.bound}: {rep.bound_ok}  Gini_opt={rep.gini_opt:.3f}")

## Exchange format
print(write_edge_list(complete_bipartite(2, 2)))
