/* gzip.h -- common declarations for all gzip modules */

#define OK      0
#define ERROR   1
#define WARNING 2

#define MAX_PATH_LEN 1024
#define INBUFSIZ 0x8000

extern int exit_code;
extern int remove_ofname_on_error;
extern char const *progname;

int zip (int in, int out);
int unzip (int in, int out);
int make_ofname (void);
void progerror (char const *string);
void write_error (void);
int fill_inbuf (int eof_ok);
void flush_window (void);

#define WARN(msg) { fprintf msg; if (exit_code == OK) exit_code = WARNING; }
