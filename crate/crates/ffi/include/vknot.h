/* C interface to the vknot invariant engine. Keep in sync with src/lib.rs. */
#ifndef VKNOT_H
#define VKNOT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum VkStatus {
  VK_STATUS_OK = 0,
  VK_STATUS_NULL_POINTER = 1,
  VK_STATUS_INVALID_UTF8 = 2,
  VK_STATUS_PARSE = 3,
  VK_STATUS_DOMAIN = 4,
  VK_STATUS_BUFFER_TOO_SMALL = 5,
  VK_STATUS_PANIC = 6
} VkStatus;

typedef enum VkInvariant {
  VK_INVARIANT_BRACKET = 0,
  VK_INVARIANT_F = 1,
  VK_INVARIANT_JONES = 2,
  VK_INVARIANT_V3 = 3,
  VK_INVARIANT_GPOLY = 4,
  VK_INVARIANT_QUATERNIONIC_GCD = 5
} VkInvariant;

typedef struct VkDiagram VkDiagram;
typedef struct VkTl VkTl;

/* Message of the last failure on this thread; valid until the next failure. */
const char *vk_last_error(void);
const char *vk_version(void);
void vk_string_free(char *s);

/* Gauss code, or PD code when the text contains '['. */
VkStatus vk_diagram_parse(const char *code, VkDiagram **out);
void vk_diagram_free(VkDiagram *d);
VkStatus vk_diagram_crossings(const VkDiagram *d, size_t *out);
VkStatus vk_diagram_writhe(const VkDiagram *d, int64_t *out);
VkStatus vk_diagram_gauss(const VkDiagram *d, char **out);
/* Canonical text rendering; release with vk_string_free. */
VkStatus vk_invariant(const VkDiagram *d, VkInvariant which, char **out);

/* Pairing list such as "1-2,1'-2'". */
VkStatus vk_tl_parse(const char *text, VkTl **out);
void vk_tl_free(VkTl *u);
VkStatus vk_tl_mul(const VkTl *a, const VkTl *b, VkTl **out, size_t *loops);
VkStatus vk_tl_to_string(const VkTl *u, char **out);
/* Writes up to cap generator indices; *len receives the full word length. */
VkStatus vk_tl_factor(const VkTl *u, size_t *buf, size_t cap, size_t *len);

#ifdef __cplusplus
}
#endif

#endif /* VKNOT_H */
