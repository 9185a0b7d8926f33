#include <stdio.h>
#include <string.h>
#include "alteration_lab.h"

#define CHECK(expr)                                                        \
  do {                                                                     \
    if (!(expr)) {                                                         \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #expr);           \
      return 1;                                                            \
    }                                                                      \
  } while (0)

int main(void) {
  AlGraph *k4 = NULL, *k3 = NULL, *free_graph = NULL;
  CHECK(al_graph_named("K4", &k4) == AL_STATUS_OK);
  CHECK(al_graph_named("K3", &k3) == AL_STATUS_OK);

  int64_t num = 0, den = 0;
  bool strict = false;
  CHECK(al_m2(k4, &num, &den, &strict) == AL_STATUS_OK);
  CHECK(num == 5 && den == 2 && strict);

  AlCopyStats stats;
  CHECK(al_copy_stats(k4, k3, &stats) == AL_STATUS_OK);
  CHECK(stats.copies == 4 && stats.covered_edges == 6 && stats.delta == 2);

  CHECK(al_alter(k4, k3, AL_METHOD_REFINED, &free_graph) == AL_STATUS_OK);
  CHECK(al_graph_vertex_count(free_graph) == 4);

  AlVerdict verdict;
  CHECK(al_ramsey_certificate(k4, k3, 3, 1000000, &verdict) == AL_STATUS_OK);
  CHECK(verdict == AL_VERDICT_NOT_CERTIFIED);

  CHECK(al_graph_named("nonsense", &k3) == AL_STATUS_PARSE);
  CHECK(al_last_error_message() != NULL && strlen(al_last_error_message()) > 0);

  al_graph_free(free_graph);
  al_graph_free(k4);
  al_graph_free(k3);
  puts("ok");
  return 0;
}
