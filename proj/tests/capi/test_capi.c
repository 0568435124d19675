/*
 * Copyright (c) 2026, The curled authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


/* Compiled as C to keep the public header honest. */

#include <stdio.h>
#include <string.h>

#include "curled/curled.h"

int capi_c_smoke(const char* facts_path) {
  curled_graph* g = NULL;
  char* text = NULL;
  int failures = 0;

  if (curled_graph_load(facts_path, &g) != CURLED_OK) return 100;
  if (curled_graph_vertex_count(g) != 7) ++failures;
  if (curled_graph_edge_count(g) != 7) ++failures;
  if (curled_inspect_nt(g, "1", 1, &text) != CURLED_OK) {
    ++failures;
  } else {
    if (strstr(text, "level 1 occurrences 2: 2 3") == NULL) ++failures;
    curled_string_free(text);
  }
  if (curled_inspect_nt(g, "nobody", 1, &text) != CURLED_ERR_DATA) ++failures;
  if (strcmp(curled_last_error_name(), "TargetNotFound") != 0) ++failures;
  curled_graph_free(g);
  return failures;
}
